#include "royden/sphere.hpp"
#include "royden/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace royden {

namespace {

constexpr double kPi = std::numbers::pi;

double angle_mod_pi(double a) {
    double m = std::fmod(a, kPi);
    if (m < 0) m += kPi;
    return m;
}

double angular_distance_mod_pi(double a, double b) {
    double d = std::abs(angle_mod_pi(a) - angle_mod_pi(b));
    return std::min(d, kPi - d);
}

int resolve_threads(int requested, int jobs) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("ROYDEN_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, std::min(n, jobs));
}

} // namespace

std::vector<double> zero_free_angles(const Poly& h, double real_axis_tol) {
    RootSet hr = find_roots(h);
    std::vector<double> angles;
    for (const auto& c : hr.roots) {
        if (std::abs(c.location.imag()) > real_axis_tol * std::max(1.0, std::abs(c.location)))
            continue;
        double x0 = c.location.real();
        angles.push_back(angle_mod_pi(std::atan2(1.0, -x0)));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

SweepResult sweep(const Poly& h, int samples, const SweepOptions& opt) {
    ValidateOptions vopt{opt.norm.root_tol, opt.norm.cluster_tol, opt.norm.cancel_tol};
    if (dimension_of_q(h, vopt) != 2)
        throw ValidationError("sweep: dim Q(X) = " + std::to_string(dimension_of_q(h, vopt)) +
                              ", the sphere parametrization needs dimension 2");
    if (samples < 8) throw ValidationError("sweep: need at least 8 samples");

    std::vector<double> zf = zero_free_angles(h);
    RootSet hr = find_roots(h, {opt.norm.root_tol, opt.norm.cluster_tol, 400});

    SweepResult result;
    result.samples.assign(static_cast<size_t>(samples), {});
    std::vector<char> failed(static_cast<size_t>(samples), 0);
    std::vector<SweepFailure> failures(static_cast<size_t>(samples));

    double dtheta = 2.0 * kPi / samples;

    auto run_sample = [&](int i) {
        double theta = i * dtheta;
        SphereSample s;
        s.theta = theta;

        double nearest = std::numeric_limits<double>::infinity();
        for (double a : zf) nearest = std::min(nearest, angular_distance_mod_pi(theta, a));
        s.near_singular = nearest <= 0.5 * dtheta + 1e-15;

        double a = std::cos(theta), b = std::sin(theta);
        try {
            NormResult nr;
            if (b != 0.0 && nearest < opt.singular_window) {
                // Exact cancellation of the shared root: q = b / (h/(x - x0)),
                // the genus-dropped differential of the zero-free direction.
                double x0 = -a / b;
                size_t best = 0;
                double bestd = std::numeric_limits<double>::infinity();
                for (size_t j = 0; j < hr.roots.size(); ++j) {
                    double d = std::abs(hr.roots[j].location - cplx(x0));
                    if (d < bestd) {
                        bestd = d;
                        best = j;
                    }
                }
                std::vector<cplx> rem;
                for (size_t j = 0; j < hr.roots.size(); ++j)
                    if (j != best) rem.push_back(hr.roots[j].location);
                Poly hd = Poly::from_roots(h.leading(), rem);
                nr = royden_norm(Poly::constant(cplx(b)), hd, opt.norm);
            } else {
                Poly g({cplx(a), cplx(b)});
                nr = royden_norm(g, h, opt.norm);
            }
            s.r = 1.0 / nr.value;
            result.samples[static_cast<size_t>(i)] = s;
            return nr;
        } catch (const Error& e) {
            failed[static_cast<size_t>(i)] = 1;
            failures[static_cast<size_t>(i)] = {theta, "pipeline", e.what()};
            result.samples[static_cast<size_t>(i)] = s;
            return NormResult{};
        }
    };

    int nthreads = resolve_threads(opt.threads, samples);
    std::atomic<int> next{0};
    std::vector<double> max_sym(static_cast<size_t>(nthreads), 0.0);
    std::vector<double> min_eig(static_cast<size_t>(nthreads),
                                std::numeric_limits<double>::infinity());
    auto worker = [&](int tid) {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= samples) break;
            NormResult nr = run_sample(i);
            if (!failed[static_cast<size_t>(i)]) {
                max_sym[static_cast<size_t>(tid)] =
                    std::max(max_sym[static_cast<size_t>(tid)], nr.tau_symmetry_rel);
                min_eig[static_cast<size_t>(tid)] =
                    std::min(min_eig[static_cast<size_t>(tid)], nr.tau_min_imag_eig);
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    for (int t = 0; t < nthreads; ++t) {
        result.max_tau_symmetry_rel = std::max(result.max_tau_symmetry_rel,
                                               max_sym[static_cast<size_t>(t)]);
        result.min_tau_imag_eig = std::min(result.min_tau_imag_eig, min_eig[static_cast<size_t>(t)]);
    }
    for (int i = 0; i < samples; ++i)
        if (failed[static_cast<size_t>(i)]) result.failures.push_back(failures[static_cast<size_t>(i)]);
    return result;
}

void finite_difference_derivatives(std::vector<SphereSample>& samples, int order) {
    size_t n = samples.size();
    if (n < 7) throw ValidationError("finite_difference_derivatives: need at least 7 samples");
    if (order < 1 || order > 3) throw ValidationError("finite_difference_derivatives: order in 1..3");
    double dtheta = 2.0 * kPi / static_cast<double>(n);

    auto central = [&](const std::vector<double>& v) {
        std::vector<double> d(n);
        for (size_t i = 0; i < n; ++i) {
            size_t ip = (i + 1) % n, im = (i + n - 1) % n;
            d[i] = (v[ip] - v[im]) / (2.0 * dtheta);
        }
        return d;
    };

    std::vector<double> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = samples[i].r;
    std::vector<double> d1 = central(r);
    std::vector<double> d2 = order >= 2 ? central(d1) : std::vector<double>(n, 0.0);
    std::vector<double> d3 = order >= 3 ? central(d2) : std::vector<double>(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        samples[i].d1 = d1[i];
        samples[i].d2 = d2[i];
        samples[i].d3 = d3[i];
        samples[i].has_derivatives = true;
    }
}

} // namespace royden
