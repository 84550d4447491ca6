#include "royden/errors.hpp"
#include "royden/jsonio.hpp"
#include "royden/norm.hpp"
#include "royden/oracle.hpp"
#include "royden/sphere.hpp"
#include "svg.hpp"
#include "textio.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace royden;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Tolerances {
    double quad_tol = 1e-10;
    double oracle_tol = 1e-5;
    double root_tol = 1e-12;
    double clearance = 0.25;
};

void add_tolerance_flags(CLI::App* cmd, Tolerances& t) {
    cmd->add_option("--quad-tol", t.quad_tol, "absolute tolerance per edge integral")
        ->check(CLI::Range(1e-14, 1.0));
    cmd->add_option("--oracle-tol", t.oracle_tol, "relative tolerance of the direct method")
        ->check(CLI::Range(1e-9, 1.0));
    cmd->add_option("--root-tol", t.root_tol, "relative residual target for root finding")
        ->check(CLI::Range(1e-15, 1.0));
    cmd->add_option("--clearance", t.clearance, "path clearance fraction of local spacing")
        ->check(CLI::Range(1e-3, 0.49));
}

NormOptions to_norm_options(const Tolerances& t) {
    NormOptions o;
    o.quad_tol = t.quad_tol;
    o.root_tol = t.root_tol;
    o.clearance = t.clearance;
    return o;
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open '" + path + "' for reading");
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"Royden norm of quadratic differentials on punctured spheres"};
    app.require_subcommand(1);
    // --h is a data flag here, so help must not claim -h
    app.set_help_flag("--help", "print usage");

    // norm
    auto* norm_cmd = app.add_subcommand("norm", "compute ||g/h dx^2||");
    norm_cmd->set_help_flag("--help", "print usage");
    std::string g_text, h_text, method = "periods", dump_paths;
    Tolerances tol;
    norm_cmd->add_option("--g", g_text, "numerator coefficients, low to high, e.g. 1+2i,0,3")
        ->required();
    norm_cmd->add_option("--h", h_text, "denominator coefficients, low to high")->required();
    norm_cmd->add_option("--method", method, "periods | direct")
        ->check(CLI::IsMember({"periods", "direct"}));
    norm_cmd->add_option("--dump-paths", dump_paths, "write the path system as JSON");
    add_tolerance_flags(norm_cmd, tol);

    // sphere
    auto* sphere_cmd = app.add_subcommand("sphere", "sample the unit sphere of Q(X)");
    sphere_cmd->set_help_flag("--help", "print usage");
    std::string sphere_h, sphere_out = "-";
    int samples = 1000, threads = 0;
    sphere_cmd->add_option("--h", sphere_h, "denominator coefficients (quintic family)")
        ->required();
    sphere_cmd->add_option("--samples", samples, "number of uniform samples")
        ->check(CLI::Range(8, 1000000));
    sphere_cmd->add_option("--out", sphere_out, "output CSV path ('-' for stdout)");
    sphere_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    Tolerances sphere_tol;
    add_tolerance_flags(sphere_cmd, sphere_tol);

    // derivatives
    auto* deriv_cmd = app.add_subcommand("derivatives", "fill d1..d3 columns of a sweep CSV");
    deriv_cmd->set_help_flag("--help", "print usage");
    std::string deriv_in, deriv_out = "-";
    int order = 3;
    deriv_cmd->add_option("--in", deriv_in, "input CSV")->required();
    deriv_cmd->add_option("--out", deriv_out, "output CSV ('-' for stdout)");
    deriv_cmd->add_option("--order", order, "highest derivative order")->check(CLI::Range(1, 3));

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "render a sweep CSV as SVG");
    plot_cmd->set_help_flag("--help", "print usage");
    std::string plot_in, plot_out = "-", kind = "polar";
    plot_cmd->add_option("--in", plot_in, "input CSV")->required();
    plot_cmd->add_option("--kind", kind, "polar | derivatives")
        ->check(CLI::IsMember({"polar", "derivatives"}));
    plot_cmd->add_option("--out", plot_out, "output SVG ('-' for stdout)");

    // roots (debug helper)
    auto* roots_cmd = app.add_subcommand("roots", "cluster the roots of a polynomial");
    roots_cmd->set_help_flag("--help", "print usage");
    std::string roots_p;
    double roots_tol = 1e-12;
    roots_cmd->add_option("--p", roots_p, "coefficients, low to high")->required();
    roots_cmd->add_option("--tol", roots_tol, "relative residual target");

    CLI11_PARSE(app, argc, argv);

    if (norm_cmd->parsed()) {
        Poly g(textio::parse_coeff_list(g_text));
        Poly h(textio::parse_coeff_list(h_text));
        QuadDiff q = validate(g, h, {tol.root_tol, 1e-8, 1e-7});
        if (!dump_paths.empty()) {
            DoubleCover cover = build_double_cover(q);
            PathSystem ps = build_path_system(cover, tol.clearance);
            write_file(dump_paths, path_system_to_json(ps).dump(2) + "\n");
        }
        if (method == "direct") {
            OracleOptions oopt;
            oopt.tol = tol.oracle_tol;
            AreaEstimate ae = direct_norm(q, oopt);
            std::cout << area_estimate_to_json(ae).dump() << "\n";
        } else {
            NormResult nr = royden_norm(q, to_norm_options(tol));
            std::cout << norm_result_to_json(nr).dump() << "\n";
        }
        return kExitOk;
    }

    if (sphere_cmd->parsed()) {
        Poly h(textio::parse_coeff_list(sphere_h));
        SweepOptions opt;
        opt.norm = to_norm_options(sphere_tol);
        opt.threads = threads;
        SweepResult res = sweep(h, samples, opt);
        if (res.samples.size() >= 7 && res.failures.empty())
            finite_difference_derivatives(res.samples, 3);
        write_file(sphere_out, textio::sweep_to_csv(res));
        return res.failures.empty() ? kExitOk : kExitNumerical;
    }

    if (deriv_cmd->parsed()) {
        std::vector<SphereSample> samples_in = textio::samples_from_csv(read_file(deriv_in));
        finite_difference_derivatives(samples_in, order);
        write_file(deriv_out, textio::samples_to_csv(samples_in, {}));
        return kExitOk;
    }

    if (plot_cmd->parsed()) {
        std::vector<SphereSample> samples_in = textio::samples_from_csv(read_file(plot_in));
        if (samples_in.empty()) throw std::invalid_argument("CSV has no data rows");
        write_file(plot_out, kind == "polar" ? svg::polar_plot(samples_in)
                                             : svg::derivative_panels(samples_in));
        return kExitOk;
    }

    if (roots_cmd->parsed()) {
        Poly p(textio::parse_coeff_list(roots_p));
        RootSet rs = find_roots(p, {roots_tol, 1e-8, 400});
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : rs.roots)
            arr.push_back({{"re", c.location.real()},
                           {"im", c.location.imag()},
                           {"multiplicity", c.multiplicity}});
        std::cout << arr.dump() << "\n";
        return kExitOk;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const royden::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const royden::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
