#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "fourfactor/model.hpp"

namespace ff {

// Axis ids double as positions in a Grid. The running-sum axis I only exists
// on rank-5 (Asian) grids.
enum Axis : int { kS = 0, kV = 1, kX = 2, kR = 3, kI = 4 };

inline constexpr int kMaxRank = 5;

const char* axis_name(int axis);

// One uniform axis. n == 1 pins the axis at `lo` (== hi); a pinned axis
// carries no derivative terms and has no faces.
struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 3;

    static AxisSpec uniform(double lo, double hi, int n) { return {lo, hi, n}; }
    static AxisSpec pinned(double value) { return {value, value, 1}; }
    bool collapsed() const { return n == 1; }
};

// Truncated domain [0,s_max] x [0,v_max] x [-x_max,x_max] x [-r_max,r_max].
struct GridSpec {
    std::array<AxisSpec, 4> axes;

    static GridSpec box(double s_max, double v_max, double x_max, double r_max,
                        int n_s, int n_v, int n_x, int n_r);

    AxisSpec& operator[](int axis) { return axes.at(axis); }
    const AxisSpec& operator[](int axis) const { return axes.at(axis); }

    void validate() const;
};

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Index = std::array<int, kMaxRank>;

// Node-centred tensor grid, faces included. Flat layout puts axis 0 (s)
// fastest: p = i + n_s*(j + n_v*(m + n_x*(n + n_r*k))).
class Grid {
public:
    Grid() = default;
    explicit Grid(std::vector<AxisSpec> axes);

    int rank() const { return static_cast<int>(axes_.size()); }
    std::size_t size() const { return size_; }

    const AxisSpec& spec(int axis) const { return axes_.at(axis); }
    int count(int axis) const { return axes_[axis].n; }
    bool collapsed(int axis) const { return axes_[axis].n == 1; }
    double spacing(int axis) const { return spacing_[axis]; }
    std::size_t stride(int axis) const { return stride_[axis]; }
    std::span<const double> coords(int axis) const { return coords_[axis]; }
    double coord(int axis, int k) const { return coords_[axis][k]; }

    std::size_t index(const Index& idx) const;
    std::size_t index(int i, int j, int m, int n, int k = 0) const;
    Index unravel(std::size_t p) const;
    // Position of flat index p along one axis.
    int along(std::size_t p, int axis) const
    {
        return static_cast<int>((p / stride_[axis]) % axes_[axis].n);
    }

    bool same_shape(const Grid& other) const;

private:
    std::vector<AxisSpec> axes_;
    std::array<std::vector<double>, kMaxRank> coords_;
    std::array<double, kMaxRank> spacing_{};
    std::array<std::size_t, kMaxRank> stride_{};
    std::size_t size_ = 0;
};

Grid build_grid(const GridSpec& spec);

enum Face : int {
    kSLo = 0, kSHi, kVLo, kVHi, kXLo, kXHi, kRLo, kRHi, kILo, kIHi,
    kFaceCount
};

inline constexpr Face low_face(int axis) { return static_cast<Face>(2 * axis); }
inline constexpr Face high_face(int axis) { return static_cast<Face>(2 * axis + 1); }

struct FaceSet {
    std::uint16_t bits = 0;

    bool contains(Face f) const { return (bits >> f) & 1u; }
    void insert(Face f) { bits = static_cast<std::uint16_t>(bits | (1u << f)); }
    bool empty() const { return bits == 0; }
    int size() const;
    bool operator==(const FaceSet&) const = default;
};

FaceSet face_of(const Index& idx, const Grid& grid);
FaceSet face_of(std::size_t p, const Grid& grid);

// Option values at one time level.
struct Field {
    std::vector<double> values;

    Field() = default;
    explicit Field(std::size_t n, double fill = 0.0) : values(n, fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t p) { return values[p]; }
    double operator[](std::size_t p) const { return values[p]; }
    bool all_finite() const;
};

void check_shape(const Field& f, const Grid& g);

// Multilinear interpolation; `point` holds one coordinate per grid axis.
// Throws std::out_of_range outside the domain.
double interpolate(const Field& field, const Grid& grid, std::span<const double> point);
double interpolate(const Field& field, const Grid& grid, const State& st);

// CSV with header "s,v,x,r[,i],value", one row per node in flat order
// (s fastest), 17 significant digits.
void write_field_csv(std::ostream& os, const Grid& grid, const Field& field);
// Reads what write_field_csv wrote for the same grid; coordinates must match.
Field read_field_csv(std::istream& is, const Grid& grid);

} // namespace ff
