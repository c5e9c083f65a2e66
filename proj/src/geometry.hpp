#pragma once

#include <algorithm>
#include <cmath>

namespace wsnloc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Axis-aligned deployment area [0, width] x [0, height].
struct Rect {
    double width = 0.0;
    double height = 0.0;

    bool contains(Vec2 p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }

    Vec2 clamp(Vec2 p) const {
        return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
    }
};

}  // namespace wsnloc
