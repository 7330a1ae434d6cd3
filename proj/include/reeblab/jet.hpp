#pragma once

// Order-4 truncated Taylor arithmetic. A Jet carries the Taylor coefficients
// a_k = f^(k)(t0)/k! of a scalar function along one parameter; composing
// jets through +,*,sin,... propagates derivatives exactly. Analytic curves
// evaluate their coordinates in this type, so curve derivatives up to order 4
// carry no finite-difference error at all.

#include <array>
#include <cmath>

#include "reeblab/errors.hpp"

namespace reeblab {

struct Jet {
    static constexpr int order = 4;
    std::array<double, order + 1> a{}; // Taylor coefficients, a[0] is the value

    Jet() = default;
    Jet(double value) { a[0] = value; } // implicit: constants promote silently

    static Jet variable(double t0) {
        Jet j;
        j.a[0] = t0;
        j.a[1] = 1.0;
        return j;
    }

    double value() const { return a[0]; }

    // k-th derivative: a_k * k!
    double derivative(int k) const {
        if (k < 0 || k > order) throw argument_error("Jet: derivative order out of range");
        static constexpr double fact[] = {1.0, 1.0, 2.0, 6.0, 24.0};
        return a[k] * fact[k];
    }
};

inline Jet operator+(const Jet& x, const Jet& y) {
    Jet r;
    for (int k = 0; k <= Jet::order; ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

inline Jet operator-(const Jet& x, const Jet& y) {
    Jet r;
    for (int k = 0; k <= Jet::order; ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

inline Jet operator-(const Jet& x) {
    Jet r;
    for (int k = 0; k <= Jet::order; ++k) r.a[k] = -x.a[k];
    return r;
}

inline Jet operator*(const Jet& x, const Jet& y) {
    Jet r;
    for (int k = 0; k <= Jet::order; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += x.a[i] * y.a[k - i];
        r.a[k] = s;
    }
    return r;
}

inline Jet operator/(const Jet& x, const Jet& y) {
    if (y.a[0] == 0.0) throw domain_error("Jet: division by zero value");
    Jet r;
    for (int k = 0; k <= Jet::order; ++k) {
        double s = x.a[k];
        for (int i = 0; i < k; ++i) s -= r.a[i] * y.a[k - i];
        r.a[k] = s / y.a[0];
    }
    return r;
}

// sin and cos share one recurrence: s' = u' c, c' = -u' s. In coefficient
// form: s_k = (1/k) sum_{i=1..k} i u_i c_{k-i}, and symmetrically for c_k.
inline void sincos_jet(const Jet& u, Jet& s, Jet& c) {
    s.a[0] = std::sin(u.a[0]);
    c.a[0] = std::cos(u.a[0]);
    for (int k = 1; k <= Jet::order; ++k) {
        double sk = 0.0, ck = 0.0;
        for (int i = 1; i <= k; ++i) {
            sk += i * u.a[i] * c.a[k - i];
            ck -= i * u.a[i] * s.a[k - i];
        }
        s.a[k] = sk / k;
        c.a[k] = ck / k;
    }
}

inline Jet sin(const Jet& u) {
    Jet s, c;
    sincos_jet(u, s, c);
    return s;
}

inline Jet cos(const Jet& u) {
    Jet s, c;
    sincos_jet(u, s, c);
    return c;
}

inline Jet exp(const Jet& u) {
    Jet e;
    e.a[0] = std::exp(u.a[0]);
    for (int k = 1; k <= Jet::order; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * u.a[i] * e.a[k - i];
        e.a[k] = s / k;
    }
    return e;
}

inline Jet sqrt(const Jet& u) {
    if (u.a[0] <= 0.0) throw domain_error("Jet: sqrt of non-positive value");
    Jet r;
    r.a[0] = std::sqrt(u.a[0]);
    for (int k = 1; k <= Jet::order; ++k) {
        double s = u.a[k];
        for (int i = 1; i < k; ++i) s -= r.a[i] * r.a[k - i];
        r.a[k] = s / (2.0 * r.a[0]);
    }
    return r;
}

} // namespace reeblab
