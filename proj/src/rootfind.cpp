#include "starshape/rootfind.hpp"

#include <cmath>

#include "starshape/errors.hpp"

namespace starshape {

RootResult safeguarded_root(const std::function<double(double)>& f, double lo, double hi,
                            double xtol, double ftol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0, true};
    if (fhi == 0.0) return {hi, 0.0, 0, true};
    if (std::signbit(flo) == std::signbit(fhi))
        throw solver_error("safeguarded_root: root not bracketed");

    double x = 0.5 * (lo + hi);
    double fx = f(x);
    double xprev = lo, fprev = flo;
    int rejected = 0;
    for (int it = 1; it <= max_iter; ++it) {
        if (std::abs(fx) <= ftol || hi - lo <= xtol * (1.0 + std::abs(x)))
            return {x, fx, it, true};

        // keep the bracket around the sign change
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }

        double cand;
        const double slope = (fx - fprev) / (x - xprev);
        bool use_newton = rejected < 3 && std::isfinite(slope) && slope != 0.0;
        if (use_newton) {
            cand = x - fx / slope;
            if (!(cand > lo && cand < hi)) use_newton = false;
        }
        if (!use_newton) {
            cand = 0.5 * (lo + hi);
            rejected = 0;
        }
        const double fcand = f(cand);
        if (std::abs(fcand) < std::abs(fx))
            rejected = 0;
        else
            ++rejected;
        xprev = x;
        fprev = fx;
        x = cand;
        fx = fcand;
    }
    return {x, fx, max_iter, std::abs(fx) <= ftol * 16};
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > xtol * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    // one bisection polish on the final bracket
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    double best = mid, fbest = fm;
    if (fc < fbest) {
        best = c;
        fbest = fc;
    }
    if (fd < fbest) best = d;
    return best;
}

}  // namespace starshape
