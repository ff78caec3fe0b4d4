#pragma once

#include <vector>

#include "brauer/curve.hpp"

namespace brauer {

// Truncated Laurent series Σ c_i t^(val+i) + O(t^(val + c.size())).
struct Series {
    int val = 0;
    std::vector<Elem> c;

    int prec() const { return val + static_cast<int>(c.size()); }  // absolute precision
    // First nonzero coefficient moved to c[0]; false when no nonzero term survives.
    bool normalize();
};

Series series_const(const Elem& a, int prec);
Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
// b must have a nonzero leading coefficient.
Series operator/(const Series& a, const Series& b);
Series eval(const Poly& f, const Series& x, const FieldPtr& L);

// Expansions of x and y in a uniformizer at P: x − x_P for ordinary affine points,
// y at 2-torsion points, x/y at the identity. n relative terms.
struct LocalCoords {
    Series x, y;
};
LocalCoords local_coords(const Curve& E, const Point& P, int n);

}  // namespace brauer
