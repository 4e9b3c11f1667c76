#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace frob::geom {

template <class T>
struct Point2 {
    T x;
    T y;

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
};

/// Closed half-plane a*x + b*y <= c.
template <class T>
struct HalfPlane {
    T a;
    T b;
    T c;

    T slack(const Point2<T>& p) const { return a * p.x + b * p.y - c; }  // <= 0 inside
    bool contains(const Point2<T>& p) const { return slack(p) <= 0; }
    bool strictly_contains(const Point2<T>& p) const { return slack(p) < 0; }
    /// Closure of the complement.
    HalfPlane flipped() const { return HalfPlane{-a, -b, -c}; }
};

template <class T>
struct Box {
    T xmin, xmax, ymin, ymax;

    /// Overlap with non-empty interior.
    bool overlaps_open(const Box& o) const {
        return xmin < o.xmax && o.xmin < xmax && ymin < o.ymax && o.ymin < ymax;
    }
};

/// Convex polygon as a counter-clockwise vertex loop.
template <class T>
using ConvexPolygon = std::vector<Point2<T>>;

template <class T>
Box<T> bounding_box(const ConvexPolygon<T>& p) {
    Box<T> b{p[0].x, p[0].x, p[0].y, p[0].y};
    for (const auto& v : p) {
        if (v.x < b.xmin) b.xmin = v.x;
        if (v.x > b.xmax) b.xmax = v.x;
        if (v.y < b.ymin) b.ymin = v.y;
        if (v.y > b.ymax) b.ymax = v.y;
    }
    return b;
}

/// Twice the signed area (positive for counter-clockwise loops).
template <class T>
T twice_area(const ConvexPolygon<T>& p) {
    T acc(0);
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % n];
        acc += u.x * v.y - v.x * u.y;
    }
    return acc;
}

/// Sutherland-Hodgman clip of a convex polygon by one half-plane.
template <class T>
ConvexPolygon<T> clip(const ConvexPolygon<T>& poly, const HalfPlane<T>& h) {
    ConvexPolygon<T> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    std::vector<T> s(n);
    bool all_in = true;
    bool all_out = true;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = h.slack(poly[i]);
        if (s[i] > 0) all_in = false;
        else all_out = false;
    }
    if (all_in) return poly;
    if (all_out) return out;
    out.reserve(n + 1);
    auto push = [&](Point2<T> p) {
        if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const bool in_i = s[i] <= 0;
        const bool in_j = s[j] <= 0;
        if (in_i) push(poly[i]);
        if (in_i != in_j && s[i] != 0 && s[j] != 0) {
            T t = s[i] / (s[i] - s[j]);
            push(Point2<T>{poly[i].x + t * (poly[j].x - poly[i].x), poly[i].y + t * (poly[j].y - poly[i].y)});
        }
    }
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

/// Regularized difference poly \ (h_0 cap ... cap h_{k-1}) as disjoint convex
/// pieces with positive area.
template <class T, std::size_t K>
std::vector<ConvexPolygon<T>> subtract_convex(const ConvexPolygon<T>& poly, const std::array<HalfPlane<T>, K>& hs) {
    std::vector<ConvexPolygon<T>> pieces;
    ConvexPolygon<T> inside = poly;
    for (std::size_t i = 0; i < K; ++i) {
        ConvexPolygon<T> piece = clip(inside, hs[i].flipped());
        if (piece.size() >= 3 && twice_area(piece) > 0) pieces.push_back(std::move(piece));
        inside = clip(inside, hs[i]);
        if (inside.size() < 3 || twice_area(inside) == 0) break;
    }
    return pieces;
}

/// Vertex average: interior for any convex polygon with positive area.
template <class T>
Point2<T> vertex_average(const ConvexPolygon<T>& p) {
    T sx(0), sy(0);
    for (const auto& v : p) {
        sx += v.x;
        sy += v.y;
    }
    T n(static_cast<long>(p.size()));
    return Point2<T>{sx / n, sy / n};
}

}  // namespace frob::geom
