#include "starshape/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "starshape/errors.hpp"

namespace starshape {

namespace {

constexpr const char* kSurfaceMagic = "starshape-surface";
constexpr const char* kReportMagic = "starshape-report";

void atomic_write(const std::string& path, const std::string& payload) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw io_error("cannot open for writing: " + tmp);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) throw io_error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("rename failed: " + path + " (" + ec.message() + ")");
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double parse_double(const std::string& tok) {
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw io_error("bad numeric field: '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw io_error("bad integer field: '" + tok + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string format_double_17(double x) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

SurfaceFile to_surface_file(const RadialSurface& s, bool binary) {
    SurfaceFile f;
    f.n = s.grid->n;
    f.shape = s.grid->shape;
    f.provenance = s.provenance;
    f.binary = binary;
    f.values = s.f.v;
    return f;
}

RadialSurface from_surface_file(const SurfaceFile& file) {
    GridPtr grid;
    try {
        grid = make_grid(file.n, file.shape);
    } catch (const std::invalid_argument& e) {
        throw io_error(std::string("surface file header invalid: ") + e.what());
    }
    if (file.values.size() != grid->nodes())
        throw io_error("surface file value count does not match shape");
    try {
        return make_surface(ScalarField(grid, file.values), file.provenance);
    } catch (const std::invalid_argument& e) {
        throw io_error(std::string("surface file values invalid: ") + e.what());
    }
}

void write_surface(const std::string& path, const SurfaceFile& file) {
    std::ostringstream os;
    os << kSurfaceMagic << " " << file.format_version << "\n";
    os << "n " << file.n << "\n";
    os << "shape";
    for (int c : file.shape) os << " " << c;
    os << "\n";
    os << "provenance " << file.provenance << "\n";
    os << "payload " << (file.binary ? "binary" : "text") << "\n";
    if (file.binary) {
        os.write(reinterpret_cast<const char*>(file.values.data()),
                 static_cast<std::streamsize>(file.values.size() * sizeof(double)));
    } else {
        for (double v : file.values) os << format_double_17(v) << "\n";
    }
    atomic_write(path, os.str());
}

SurfaceFile read_surface(const std::string& path) {
    const std::string raw = read_all(path);
    std::istringstream in(raw);
    SurfaceFile f;

    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kSurfaceMagic)
        throw io_error("not a surface file: " + path);
    if (version != 1) throw io_error("unsupported surface format version");
    f.format_version = version;

    std::string key;
    if (!(in >> key >> f.n) || key != "n") throw io_error("surface file: missing dimension");
    if (!(in >> key) || key != "shape") throw io_error("surface file: missing shape");
    {
        std::string rest;
        std::getline(in, rest);
        std::istringstream ss(rest);
        int c;
        while (ss >> c) f.shape.push_back(c);
    }
    if (!(in >> key) || key != "provenance")
        throw io_error("surface file: missing provenance");
    std::getline(in, f.provenance);
    if (!f.provenance.empty() && f.provenance.front() == ' ') f.provenance.erase(0, 1);
    std::string payload;
    if (!(in >> key >> payload) || key != "payload")
        throw io_error("surface file: missing payload marker");

    std::size_t total = 1;
    for (int c : f.shape) {
        if (c <= 0) throw io_error("surface file: bad shape entry");
        total *= static_cast<std::size_t>(c);
    }
    f.values.resize(total);

    if (payload == "binary") {
        f.binary = true;
        // values start right after the newline that ends the payload line
        const std::size_t pos = raw.find("\npayload binary\n");
        if (pos == std::string::npos) throw io_error("surface file: malformed binary payload");
        const std::size_t start = pos + std::strlen("\npayload binary\n");
        if (raw.size() - start < total * sizeof(double))
            throw io_error("surface file: truncated binary payload");
        std::memcpy(f.values.data(), raw.data() + start, total * sizeof(double));
    } else if (payload == "text") {
        f.binary = false;
        for (std::size_t i = 0; i < total; ++i) {
            std::string tok;
            if (!(in >> tok)) throw io_error("surface file: truncated values");
            f.values[i] = parse_double(tok);
        }
    } else {
        throw io_error("surface file: unknown payload mode '" + payload + "'");
    }
    return f;
}

namespace {

void emit_kv(std::ostringstream& os, const std::string& key, double v) {
    os << key << " " << format_double_17(v) << "\n";
}

void emit_kv(std::ostringstream& os, const std::string& key, bool v) {
    os << key << " " << (v ? 1 : 0) << "\n";
}

void emit_vec(std::ostringstream& os, const std::string& key,
              const std::vector<double>& v) {
    os << key;
    for (double x : v) os << " " << format_double_17(x);
    os << "\n";
}

}  // namespace

std::string format_report(const ExperimentResult& r) {
    std::ostringstream os;
    os << kReportMagic << " 1\n";
    os << "[spec]\n";
    os << "kind " << kind_name(r.spec.kind) << "\n";
    os << "n " << r.spec.n << "\n";
    os << "shape";
    for (int c : r.spec.shape) os << " " << c;
    os << "\n";
    os << "provenance " << r.spec.provenance() << "\n";
    emit_kv(os, "p", r.p);
    emit_kv(os, "epsilon", r.epsilon);
    emit_kv(os, "delta", r.delta);

    os << "[admissibility]\n";
    os << "present " << (r.admissibility ? 1 : 0) << "\n";
    if (r.admissibility) {
        const auto& a = *r.admissibility;
        emit_kv(os, "is_convex", a.is_convex);
        emit_kv(os, "min_curvature", a.min_curvature);
        emit_kv(os, "volume_gap", a.volume_gap);
        emit_kv(os, "traceless_norm", a.traceless_norm);
        emit_kv(os, "delta", a.delta);
        emit_kv(os, "is_admissible", a.is_admissible);
        emit_kv(os, "p", a.p);
        emit_kv(os, "epsilon", a.epsilon);
        emit_kv(os, "sup_f", a.sup_f);
        emit_kv(os, "sup_grad_f", a.sup_grad_f);
        emit_kv(os, "osc_f", a.osc_f);
    }

    os << "[centering]\n";
    os << "present " << (r.centering ? 1 : 0) << "\n";
    if (!r.centering_error.empty()) os << "error " << r.centering_error << "\n";
    if (r.centering) {
        const auto& c = *r.centering;
        emit_vec(os, "c0", c.c0);
        os << "iterations " << c.iterations << "\n";
        emit_kv(os, "residual", c.residual);
        emit_kv(os, "converged", c.converged);
    }

    os << "[rigidity]\n";
    os << "present " << (r.rigidity ? 1 : 0) << "\n";
    if (!r.rigidity_error.empty()) os << "error " << r.rigidity_error << "\n";
    if (r.rigidity) {
        const auto& g = *r.rigidity;
        emit_kv(os, "lambda_star", g.lambda_star);
        emit_kv(os, "min_norm", g.min_norm);
        emit_kv(os, "h_bar", g.h_bar);
        emit_kv(os, "hbar_norm", g.hbar_norm);
        emit_kv(os, "codazzi_residual", g.codazzi_residual);
        emit_kv(os, "constant_factor", g.constant_factor);
        emit_kv(os, "linearized_residual", g.linearized_residual);
        emit_vec(os, "v_f", g.v_f);
        emit_kv(os, "w2p_distance", g.w2p_distance);
        emit_kv(os, "traceless_norm", g.traceless_norm);
        emit_kv(os, "ratio", g.ratio);
        emit_kv(os, "exactly_round", g.exactly_round);
    }

    os << "[timing]\n";
    emit_kv(os, "generate_s", r.timing.generate_s);
    emit_kv(os, "admissibility_s", r.timing.admissibility_s);
    emit_kv(os, "centering_s", r.timing.centering_s);
    emit_kv(os, "rigidity_s", r.timing.rigidity_s);
    return os.str();
}

void write_report(const std::string& path, const ExperimentResult& result) {
    atomic_write(path, format_report(result));
}

std::string strip_timing(const std::string& report_text) {
    std::istringstream in(report_text);
    std::ostringstream out;
    std::string line;
    bool in_timing = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '[')
            in_timing = (line == "[timing]");
        if (!in_timing) out << line << "\n";
    }
    return out.str();
}

std::string format_csv(const std::vector<VerifyRow>& rows) {
    std::ostringstream os;
    os << "name,value,threshold,pass\n";
    for (const auto& r : rows)
        os << r.name << "," << format_double(r.value) << "," << format_double(r.threshold)
           << "," << (r.pass ? 1 : 0) << "\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    atomic_write(path, content);
}

}  // namespace starshape
