#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "starshape/errors.hpp"
#include "starshape/io.hpp"
#include "starshape/parallel.hpp"
#include "starshape/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitSolver = 4;

std::vector<int> parse_shape(const std::string& text) {
    std::vector<int> shape;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, 'x')) shape.push_back(std::stoi(tok));
    return shape;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<starshape::HarmonicMode> parse_modes(const std::string& text) {
    std::vector<starshape::HarmonicMode> modes;
    std::stringstream ss(text);
    std::string group;
    while (std::getline(ss, group, ';')) {
        const std::vector<double> parts = parse_doubles(group);
        if (parts.size() != 3) throw CLI::ValidationError("modes", "expected l,m,amplitude");
        modes.push_back({static_cast<int>(parts[0]), static_cast<int>(parts[1]), parts[2]});
    }
    return modes;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace starshape;

    CLI::App app{"starshape: geometry and sphere-rigidity analysis of star-shaped hypersurfaces"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread override (0 = OpenMP default)");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "sample a surface profile and write it");
    std::string gen_kind;
    int gen_n = 2;
    std::string gen_shape;
    double gen_scale = 0.0;
    std::string gen_center, gen_axes, gen_modes;
    std::uint64_t gen_seed = 0;
    int gen_band = 6;
    double gen_cap = 0.15;
    bool gen_binary = false;
    std::string gen_out;
    gen_cmd->add_option("kind", gen_kind,
                        "sphere | translated-sphere | ellipsoid | harmonic | random-convex")
        ->required();
    gen_cmd->add_option("--n", gen_n, "intrinsic dimension (default 2)");
    gen_cmd->add_option("--shape", gen_shape, "node counts, e.g. 32x64");
    gen_cmd->add_option("--scale", gen_scale, "sphere: log-radius");
    gen_cmd->add_option("--center", gen_center, "translated sphere center, e.g. 0.1,0,0");
    gen_cmd->add_option("--axes", gen_axes, "ellipsoid semi-axes, e.g. 1,1,1.05");
    gen_cmd->add_option("--modes", gen_modes, "harmonic modes l,m,amp;l,m,amp;...");
    gen_cmd->add_option("--seed", gen_seed, "random-convex seed");
    gen_cmd->add_option("--band", gen_band, "random-convex band limit");
    gen_cmd->add_option("--amplitude", gen_cap, "random-convex amplitude cap");
    gen_cmd->add_flag("--binary", gen_binary, "binary payload (bit-exact round trip)");
    gen_cmd->add_option("-o,--out", gen_out, "output surface file")->required();

    // analyze
    auto* ana_cmd = app.add_subcommand("analyze", "full pipeline report for a surface file");
    std::string ana_in, ana_out;
    double ana_p = 2.0, ana_delta = 0.5;
    double ana_eps = -1.0;
    ana_cmd->add_option("surface", ana_in, "input surface file")->required();
    ana_cmd->add_option("--p", ana_p, "integrability exponent in (1, inf)");
    ana_cmd->add_option("--epsilon", ana_eps, "closeness scale in (0, 1/4); default from f");
    ana_cmd->add_option("--delta", ana_delta, "admissibility threshold for the traceless norm");
    ana_cmd->add_option("-o,--out", ana_out, "output report file")->required();

    // center
    auto* ctr_cmd = app.add_subcommand("center", "solve for the canonical center");
    std::string ctr_in, ctr_out, ctr_surf_out;
    double ctr_tol = 1e-10;
    int ctr_max_iter = 50;
    ctr_cmd->add_option("surface", ctr_in, "input surface file")->required();
    ctr_cmd->add_option("--tol", ctr_tol, "residual tolerance on |Phi(c)|");
    ctr_cmd->add_option("--max-iter", ctr_max_iter, "iteration budget");
    ctr_cmd->add_option("-o,--out", ctr_out, "output report file")->required();
    ctr_cmd->add_option("--out-surface", ctr_surf_out, "recentred surface file")->required();

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run a verification suite, emit CSV");
    std::string ver_suite, ver_csv;
    std::uint64_t ver_seed = 7;
    int ver_count = 100;
    double ver_p = 2.0;
    ver_cmd->add_option("--suite", ver_suite,
                        "identities | codazzi | corollary | convergence | ratios")
        ->required();
    ver_cmd->add_option("--seed", ver_seed, "suite seed");
    ver_cmd->add_option("--count", ver_count, "corollary: number of random surfaces");
    ver_cmd->add_option("--p", ver_p, "corollary: exponent");
    ver_cmd->add_option("--csv", ver_csv, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    set_thread_count(threads);

    try {
        if (*gen_cmd) {
            SurfaceSpec spec;
            spec.kind = kind_from_name(gen_kind);
            spec.n = gen_n;
            spec.shape = gen_shape.empty() ? default_shape(gen_n) : parse_shape(gen_shape);
            spec.scale = gen_scale;
            if (!gen_center.empty()) spec.center = parse_doubles(gen_center);
            if (!gen_axes.empty()) spec.semi_axes = parse_doubles(gen_axes);
            if (!gen_modes.empty()) spec.modes = parse_modes(gen_modes);
            spec.seed = gen_seed;
            spec.band = gen_band;
            spec.amplitude_cap = gen_cap;
            GeneratedSurface gen = generate(spec);
            write_surface(gen_out, to_surface_file(gen.surface, gen_binary));
            std::cout << "wrote " << gen_out << " (" << gen.surface.f.v.size() << " nodes)\n";
            return kExitOk;
        }

        if (*ana_cmd) {
            const SurfaceFile file = read_surface(ana_in);
            const RadialSurface surf = from_surface_file(file);
            SurfaceSpec echo;
            echo.n = file.n;
            echo.shape = file.shape;
            std::optional<double> eps;
            if (ana_eps > 0.0) eps = ana_eps;
            ExperimentResult result = analyze_surface(surf, echo, ana_p, eps, ana_delta);
            write_report(ana_out, result);
            std::cout << "wrote " << ana_out << "\n";
            return kExitOk;
        }

        if (*ctr_cmd) {
            const SurfaceFile file = read_surface(ctr_in);
            const RadialSurface surf = from_surface_file(file);
            CenteringResult ctr = solve_center(surf, ctr_tol, ctr_max_iter);
            if (!ctr.converged) throw solver_error("centering did not converge");
            SurfaceSpec echo;
            echo.n = file.n;
            echo.shape = file.shape;
            ExperimentResult result;
            result.spec = echo;
            result.centering =
                CenteringSummary{ctr.c0, ctr.iterations, ctr.residual, ctr.converged};
            write_report(ctr_out, result);
            write_surface(ctr_surf_out, to_surface_file(ctr.recentred, file.binary));
            std::cout << "wrote " << ctr_out << " and " << ctr_surf_out << "\n";
            return kExitOk;
        }

        if (*ver_cmd) {
            std::vector<VerifyRow> rows;
            try {
                rows = run_suite(ver_suite, ver_seed, ver_count, ver_p);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            const std::string csv = format_csv(rows);
            if (ver_csv.empty())
                std::cout << csv;
            else
                write_text_file(ver_csv, csv);
            const bool ok = all_pass(rows);
            int passed = 0;
            for (const auto& r : rows) passed += r.pass ? 1 : 0;
            std::cerr << "suite " << ver_suite << ": " << passed << "/" << rows.size()
                      << " checks passed\n";
            return ok ? kExitOk : kExitVerifyFail;
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
