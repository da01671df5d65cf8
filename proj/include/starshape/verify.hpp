#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "starshape/io.hpp"

namespace starshape {

/// Named verification suites behind `verify --suite <name>`. Each returns
/// one row per check; a suite passes when every row passes. Rows are
/// deterministic for a fixed seed (timing never enters a row).
std::vector<VerifyRow> verify_identities(std::uint64_t seed);
std::vector<VerifyRow> verify_codazzi();
std::vector<VerifyRow> verify_corollary(int count, std::uint64_t seed, double p);
std::vector<VerifyRow> verify_convergence(std::uint64_t seed);
std::vector<VerifyRow> verify_ratios(std::uint64_t seed);

std::vector<VerifyRow> run_suite(const std::string& name, std::uint64_t seed, int count,
                                 double p);

bool all_pass(const std::vector<VerifyRow>& rows);

/// Maximum absolute gap between the numeric fields of two pipeline reports
/// (timing excluded); used by the scale-invariance check.
double report_field_gap(const ExperimentResult& a, const ExperimentResult& b);

}  // namespace starshape
