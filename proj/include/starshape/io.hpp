#pragma once
#include <string>
#include <vector>

#include "starshape/experiments.hpp"

namespace starshape {

/// On-disk surface: header plus row-major profile values, text (17
/// significant digits, exact double round-trip) or little-endian binary.
struct SurfaceFile {
    int format_version = 1;
    int n = 2;
    std::vector<int> shape;
    std::string provenance;
    bool binary = false;
    std::vector<double> values;
};

SurfaceFile to_surface_file(const RadialSurface& s, bool binary = false);
RadialSurface from_surface_file(const SurfaceFile& file);

void write_surface(const std::string& path, const SurfaceFile& file);
SurfaceFile read_surface(const std::string& path);

/// Structured-text report mirroring ExperimentResult field for field.
std::string format_report(const ExperimentResult& result);
void write_report(const std::string& path, const ExperimentResult& result);

/// Report text with the [timing] section removed (reports are reproducible
/// modulo timing).
std::string strip_timing(const std::string& report_text);

struct VerifyRow {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

std::string format_csv(const std::vector<VerifyRow>& rows);
void write_text_file(const std::string& path, const std::string& content);

/// Locale-independent shortest round-trip / fixed-precision formatting.
std::string format_double(double x);            // shortest round-trip
std::string format_double_17(double x);         // 17 significant digits

}  // namespace starshape
