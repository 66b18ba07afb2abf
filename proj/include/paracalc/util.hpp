#ifndef PARACALC_UTIL_HPP
#define PARACALC_UTIL_HPP

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace paracalc {

/** Tolerance used for classifying parameter tuples onto boundary lines.
 *  All symbolic comparisons (equalities between smoothness/integrability
 *  exponents) are made up to this slack. */
inline constexpr double kParamTol = 1e-12;

inline bool approx_eq(double a, double b, double tol = kParamTol) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::fabs(a - b) <= tol;
}

inline bool leq_tol(double a, double b, double tol = kParamTol) {
    return a <= b + tol;
}

inline bool lt_tol(double a, double b, double tol = kParamTol) {
    return a < b - tol;
}

/** Positive and negative parts, (x)_+ and (x)_-. Both are >= 0. */
inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
inline double neg_part(double x) { return x < 0.0 ? -x : 0.0; }

/** Thread cap: PARACALC_THREADS wins over hardware concurrency. */
inline unsigned max_threads() {
    if (const char* env = std::getenv("PARACALC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1u;
}

/** Plain blocked parallel loop over [0, n). Runs serially when the cap or
 *  problem size makes threads pointless. */
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    unsigned nt = max_threads();
    if (nt <= 1 || n < 2048) {
        body(0, n);
        return;
    }
    if (nt > n) nt = static_cast<unsigned>(n);
    std::vector<std::thread> threads;
    threads.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([lo, hi, &body] { body(lo, hi); });
    }
    for (auto& th : threads) th.join();
}

}  // namespace paracalc

#endif
