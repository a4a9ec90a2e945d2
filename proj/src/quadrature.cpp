#include "apv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apv {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0000000000000000};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct PanelEstimate {
    double value;
    double error;
    double resabs;
};

PanelEstimate qk15(const std::function<double(double)>& f, double lo, double hi) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();

    const double centre = 0.5 * (lo + hi);
    const double hlgth = 0.5 * (hi - lo);

    double fv1[7];
    double fv2[7];
    const double fc = f(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk[jtw];
        fv1[jtw] = f(centre - absc);
        fv2[jtw] = f(centre + absc);
        const double fsum = fv1[jtw] + fv2[jtw];
        resg += kWg[j] * fsum;
        resk += kWgk[jtw] * fsum;
        resabs += kWgk[jtw] * (std::fabs(fv1[jtw]) + std::fabs(fv2[jtw]));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk[jtwm1];
        fv1[jtwm1] = f(centre - absc);
        fv2[jtwm1] = f(centre + absc);
        const double fsum = fv1[jtwm1] + fv2[jtwm1];
        resk += kWgk[jtwm1] * fsum;
        resabs += kWgk[jtwm1] * (std::fabs(fv1[jtwm1]) + std::fabs(fv2[jtwm1]));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    }

    const double result = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double abserr = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    if (resabs > uflow / (50.0 * eps)) {
        abserr = std::max(eps * 50.0 * resabs, abserr);
    }
    return {result, abserr, resabs};
}

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
};

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.lo < y.lo;  // deterministic tie-break
    }
};

}  // namespace

QuadResult integrate_seeded(const std::function<double(double)>& f,
                            const std::vector<double>& breakpoints, double tol) {
    if (!(tol > 0.0)) throw InvalidArgumentError("quadrature tolerance must be positive");
    if (breakpoints.size() < 2) throw InvalidArgumentError("need at least one panel");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i - 1] < breakpoints[i])) {
            throw InvalidArgumentError("panel breakpoints must be strictly increasing");
        }
    }

    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<Panel> heap;
    heap.reserve(64);
    long evaluations = 0;
    double total_error = 0.0;
    double total_resabs = 0.0;

    auto push_panel = [&](double lo, double hi) {
        const PanelEstimate est = qk15(f, lo, hi);
        evaluations += 15;
        total_error += est.error;
        total_resabs += est.resabs;
        heap.push_back({lo, hi, est.value, est.error});
        std::push_heap(heap.begin(), heap.end(), PanelWorse{});
    };

    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        push_panel(breakpoints[i - 1], breakpoints[i]);
    }

    // Splitting below the accumulated round-off floor cannot help.
    auto error_floor = [&]() { return 100.0 * eps * total_resabs; };

    while (total_error > std::max(tol, error_floor())) {
        if (static_cast<int>(heap.size()) + 1 > kMaxSubdivisions) {
            double best = 0.0;
            for (const auto& panel : heap) best += panel.value;
            throw AccuracyError("quadrature did not reach tol = " + std::to_string(tol) +
                                    " within the subdivision budget",
                                best, total_error);
        }
        std::pop_heap(heap.begin(), heap.end(), PanelWorse{});
        const Panel worst = heap.back();
        heap.pop_back();
        total_error -= worst.error;

        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) {
            // Interval at floating-point resolution; keep it as is.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), PanelWorse{});
            total_error += worst.error;
            break;
        }
        push_panel(worst.lo, mid);
        push_panel(mid, worst.hi);
    }

    double value = 0.0;
    for (const auto& panel : heap) value += panel.value;
    return {value, total_error, static_cast<int>(heap.size()), evaluations};
}

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw InvalidArgumentError("quadrature tolerance must be positive");
    if (lo > hi) throw InvalidArgumentError("integration bounds must satisfy lo <= hi");
    if (lo == hi) return {0.0, 0.0, 0, 1};
    return integrate_seeded(f, {lo, hi}, tol);
}

QuadResult integrate(const Integrand& f, double lo, double hi, double tol) {
    return integrate([&f](double x) { return f(x); }, lo, hi, tol);
}

namespace {

// Panel boundaries for [far, near] where `near` is the puncture edge and
// `pole` the pole location: widths halve geometrically toward the edge.
std::vector<double> graded_breakpoints(double far, double near, double pole) {
    const double edge_distance = std::fabs(pole - near);
    const double span = std::fabs(pole - far);
    std::vector<double> distances;  // distances from the pole, descending
    distances.push_back(span);
    double d = edge_distance;
    std::vector<double> ladder;
    while (d * 2.0 < span && ladder.size() < 60) {
        ladder.push_back(d);
        d *= 2.0;
    }
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) distances.push_back(*it);
    if (distances.back() != edge_distance) distances.push_back(edge_distance);

    std::vector<double> pts;
    pts.reserve(distances.size());
    const double side = (near < pole) ? -1.0 : 1.0;
    for (double dist : distances) pts.push_back(pole + side * dist);
    // Pin the exact endpoints against round-off in the ladder arithmetic.
    pts.front() = far;
    pts.back() = near;
    if (far > near) {
        std::reverse(pts.begin(), pts.end());
    }
    return pts;
}

}  // namespace

ApvResult apv_direct(const PoleProblem& p, Rho rho, double tol) {
    p.require_valid(rho);
    if (!(tol > 0.0)) throw InvalidArgumentError("tolerance must be positive");

    const double c = p.c();
    const int n = p.n();
    const Integrand& f = p.f();
    auto kernel = [&f, c, n](double x) { return f(x) / std::pow(x - c, n); };

    const auto left =
        integrate_seeded(kernel, graded_breakpoints(p.a(), c - rho.value, c), tol);
    const auto right =
        integrate_seeded(kernel, graded_breakpoints(c + rho.value, p.b(), c), tol);

    return {left.value + right.value, left.abs_error_estimate + right.abs_error_estimate,
            rho.value, left.evaluations + right.evaluations};
}

std::vector<RhoCurveEntry> apv_rho_curve(const PoleProblem& p, const std::vector<double>& rhos,
                                         double tol) {
    std::vector<RhoCurveEntry> out;
    out.reserve(rhos.size());
    for (double r : rhos) {
        RhoCurveEntry entry{r, std::nullopt, ""};
        try {
            entry.result = apv_direct(p, Rho(r), tol);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace apv
