#include "fourfactor/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <string>
#include <ostream>
#include <sstream>

namespace ff {

const char* axis_name(int axis)
{
    static constexpr const char* names[] = {"s", "v", "x", "r", "i"};
    return (axis >= 0 && axis < kMaxRank) ? names[axis] : "?";
}

GridSpec GridSpec::box(double s_max, double v_max, double x_max, double r_max,
                       int n_s, int n_v, int n_x, int n_r)
{
    GridSpec g;
    g.axes = {AxisSpec::uniform(0.0, s_max, n_s), AxisSpec::uniform(0.0, v_max, n_v),
              AxisSpec::uniform(-x_max, x_max, n_x), AxisSpec::uniform(-r_max, r_max, n_r)};
    return g;
}

namespace {

void validate_axis(const AxisSpec& a, int axis)
{
    std::ostringstream msg;
    msg << "axis " << axis_name(axis) << ": ";
    if (a.n == 1) {
        if (!std::isfinite(a.lo) || a.lo != a.hi) {
            msg << "pinned axis needs lo == hi";
            throw GridError(msg.str());
        }
        return;
    }
    if (a.n < 3) {
        msg << "needs at least 3 nodes (got " << a.n << ")";
        throw GridError(msg.str());
    }
    if (!(a.hi > a.lo) || !std::isfinite(a.hi - a.lo)) {
        msg << "extent must be positive";
        throw GridError(msg.str());
    }
}

} // namespace

void GridSpec::validate() const
{
    for (int a = 0; a < 4; ++a)
        validate_axis(axes[a], a);
    if (axes[kS].lo < 0.0 || axes[kV].lo < 0.0)
        throw GridError("s and v axes must be nonnegative");
}

Grid::Grid(std::vector<AxisSpec> axes) : axes_(std::move(axes))
{
    if (axes_.size() != 4 && axes_.size() != 5)
        throw GridError("grid rank must be 4 or 5");
    size_ = 1;
    for (int a = 0; a < rank(); ++a) {
        const AxisSpec& ax = axes_[a];
        validate_axis(ax, a);
        stride_[a] = size_;
        size_ *= static_cast<std::size_t>(ax.n);
        auto& c = coords_[a];
        c.resize(ax.n);
        if (ax.n == 1) {
            c[0] = ax.lo;
            spacing_[a] = 0.0;
            continue;
        }
        spacing_[a] = (ax.hi - ax.lo) / (ax.n - 1);
        for (int k = 0; k < ax.n; ++k)
            c[k] = ax.lo + k * spacing_[a];
        // exact endpoints; a symmetric odd axis gets an exact zero
        c.back() = ax.hi;
        if (ax.lo == -ax.hi && ax.n % 2 == 1)
            c[ax.n / 2] = 0.0;
    }
}

Grid build_grid(const GridSpec& spec)
{
    spec.validate();
    return Grid({spec.axes.begin(), spec.axes.end()});
}

std::size_t Grid::index(const Index& idx) const
{
    std::size_t p = 0;
    for (int a = 0; a < rank(); ++a) {
        if (idx[a] < 0 || idx[a] >= axes_[a].n)
            throw std::out_of_range("grid index out of range");
        p += stride_[a] * static_cast<std::size_t>(idx[a]);
    }
    return p;
}

std::size_t Grid::index(int i, int j, int m, int n, int k) const
{
    return index(Index{i, j, m, n, k});
}

Index Grid::unravel(std::size_t p) const
{
    if (p >= size_)
        throw std::out_of_range("flat index out of range");
    Index idx{};
    for (int a = 0; a < rank(); ++a) {
        idx[a] = static_cast<int>(p % axes_[a].n);
        p /= axes_[a].n;
    }
    return idx;
}

bool Grid::same_shape(const Grid& other) const
{
    if (rank() != other.rank())
        return false;
    for (int a = 0; a < rank(); ++a)
        if (axes_[a].n != other.axes_[a].n || axes_[a].lo != other.axes_[a].lo ||
            axes_[a].hi != other.axes_[a].hi)
            return false;
    return true;
}

int FaceSet::size() const { return std::popcount(bits); }

FaceSet face_of(const Index& idx, const Grid& grid)
{
    FaceSet f;
    for (int a = 0; a < grid.rank(); ++a) {
        const int n = grid.count(a);
        if (idx[a] < 0 || idx[a] >= n)
            throw std::out_of_range("face_of: index out of range");
        if (n == 1)
            continue;
        if (idx[a] == 0)
            f.insert(low_face(a));
        if (idx[a] == n - 1)
            f.insert(high_face(a));
    }
    return f;
}

FaceSet face_of(std::size_t p, const Grid& grid) { return face_of(grid.unravel(p), grid); }

bool Field::all_finite() const
{
    for (double v : values)
        if (!std::isfinite(v))
            return false;
    return true;
}

void check_shape(const Field& f, const Grid& g)
{
    if (f.size() != g.size())
        throw std::invalid_argument("field does not match grid shape");
}

double interpolate(const Field& field, const Grid& grid, std::span<const double> point)
{
    check_shape(field, grid);
    const int rank = grid.rank();
    if (static_cast<int>(point.size()) != rank)
        throw std::invalid_argument("interpolate: point rank mismatch");

    std::array<std::size_t, kMaxRank> base{};
    std::array<double, kMaxRank> t{};
    std::array<bool, kMaxRank> active{};
    for (int a = 0; a < rank; ++a) {
        const AxisSpec& ax = grid.spec(a);
        const double x = point[a];
        if (ax.n == 1) {
            if (std::abs(x - ax.lo) > 1e-12 * std::max(1.0, std::abs(ax.lo)))
                throw std::out_of_range(std::string("interpolate: off pinned axis ") + axis_name(a));
            base[a] = 0;
            continue;
        }
        const double tol = 1e-12 * (ax.hi - ax.lo);
        if (!(x >= ax.lo - tol && x <= ax.hi + tol))
            throw std::out_of_range(std::string("interpolate: outside domain along ") + axis_name(a));
        const double h = grid.spacing(a);
        int k = static_cast<int>(std::floor((x - ax.lo) / h));
        k = std::clamp(k, 0, ax.n - 2);
        base[a] = static_cast<std::size_t>(k);
        t[a] = std::clamp((x - grid.coord(a, k)) / h, 0.0, 1.0);
        active[a] = true;
    }

    std::size_t origin = 0;
    for (int a = 0; a < rank; ++a)
        origin += base[a] * grid.stride(a);

    double acc = 0.0;
    for (unsigned corner = 0; corner < (1u << rank); ++corner) {
        double w = 1.0;
        std::size_t p = origin;
        for (int a = 0; a < rank && w != 0.0; ++a) {
            const bool up = (corner >> a) & 1u;
            if (!active[a]) {
                if (up)
                    w = 0.0;
                continue;
            }
            w *= up ? t[a] : 1.0 - t[a];
            if (up)
                p += grid.stride(a);
        }
        if (w != 0.0)
            acc += w * field[p];
    }
    return acc;
}

double interpolate(const Field& field, const Grid& grid, const State& st)
{
    const std::array<double, 4> pt{st.s, st.v, st.x, st.r};
    return interpolate(field, grid, std::span<const double>(pt));
}

void write_field_csv(std::ostream& os, const Grid& grid, const Field& field)
{
    check_shape(field, grid);
    os << "s,v,x,r";
    if (grid.rank() == 5)
        os << ",i";
    os << ",value\n";
    os << std::setprecision(17);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const Index idx = grid.unravel(p);
        for (int a = 0; a < grid.rank(); ++a)
            os << grid.coord(a, idx[a]) << ',';
        os << field[p] << '\n';
    }
}

Field read_field_csv(std::istream& is, const Grid& grid)
{
    std::string line;
    std::string want = "s,v,x,r";
    if (grid.rank() == 5)
        want += ",i";
    want += ",value";
    if (!std::getline(is, line) || line != want)
        throw std::runtime_error("field csv: expected header '" + want + "'");
    Field f(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (!std::getline(is, line))
            throw std::runtime_error("field csv: expected " + std::to_string(grid.size()) + " rows");
        std::istringstream row(line);
        std::string cell;
        const Index idx = grid.unravel(p);
        for (int a = 0; a <= grid.rank(); ++a) {
            if (!std::getline(row, cell, ','))
                throw std::runtime_error("field csv: short row " + std::to_string(p + 2));
            const double x = std::stod(cell);
            if (a == grid.rank()) {
                f[p] = x;
            } else {
                const double c = grid.coord(a, idx[a]);
                if (std::abs(x - c) > 1e-12 * std::max(1.0, std::abs(c)))
                    throw std::runtime_error("field csv: row " + std::to_string(p + 2) +
                                             " does not match the grid");
            }
        }
    }
    return f;
}

} // namespace ff
