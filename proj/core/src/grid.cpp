#include "rotorlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace rotorlab {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

TimeGrid::TimeGrid(int n_steps) : n_steps_(n_steps), dt_(1.0 / n_steps) {
    require(n_steps >= 2, "TimeGrid: n_steps must be >= 2, got " + std::to_string(n_steps));
}

double TimeGrid::time(int i) const {
    require(i >= 0 && i <= n_steps_, "TimeGrid::time: index out of range");
    return static_cast<double>(i) * dt_;
}

DiscretePath::DiscretePath(TimeGrid grid, Eigen::MatrixXd increments)
    : grid_(grid), increments_(std::move(increments)) {
    require(increments_.rows() == grid_.n_steps(),
            "DiscretePath: increment rows must equal n_steps");
    require(increments_.cols() >= 1, "DiscretePath: dim must be >= 1");
}

Eigen::RowVectorXd DiscretePath::value(int i) const {
    require(i >= 0 && i <= grid_.n_steps(), "DiscretePath::value: index out of range");
    return increments_.topRows(i).colwise().sum();
}

Eigen::MatrixXd DiscretePath::values() const {
    Eigen::MatrixXd out(grid_.n_steps() + 1, dim());
    out.row(0).setZero();
    for (int i = 0; i < grid_.n_steps(); ++i) out.row(i + 1) = out.row(i) + increments_.row(i);
    return out;
}

CMVector::CMVector(TimeGrid grid, Eigen::MatrixXd density)
    : grid_(grid), density_(std::move(density)) {
    require(density_.rows() == grid_.n_steps(), "CMVector: density rows must equal n_steps");
    require(density_.cols() >= 1, "CMVector: dim must be >= 1");
}

double CMVector::squared_norm() const { return density_.squaredNorm() * grid_.dt(); }

double CMVector::norm() const { return std::sqrt(squared_norm()); }

CMVector& CMVector::operator+=(const CMVector& other) {
    require(grid_ == other.grid_ && dim() == other.dim(), "CMVector: grid/dim mismatch in +");
    density_ += other.density_;
    return *this;
}

CMVector& CMVector::operator*=(double scale) {
    density_ *= scale;
    return *this;
}

DiscretePath sample_brownian(const TimeGrid& grid, int dim, RngStream stream) {
    require(dim >= 1, "sample_brownian: dim must be >= 1");
    Rng rng(stream);
    const double sd = std::sqrt(grid.dt());
    Eigen::MatrixXd inc(grid.n_steps(), dim);
    for (int i = 0; i < grid.n_steps(); ++i)
        for (int c = 0; c < dim; ++c) inc(i, c) = sd * rng.normal();
    return DiscretePath(grid, std::move(inc));
}

double cm_inner(const CMVector& h, const CMVector& k) {
    require(h.grid() == k.grid() && h.dim() == k.dim(), "cm_inner: grid/dim mismatch");
    return h.density().cwiseProduct(k.density()).sum() * h.grid().dt();
}

double wiener_integral(const CMVector& h, const DiscretePath& w) {
    require(h.grid() == w.grid() && h.dim() == w.dim(), "wiener_integral: shape mismatch");
    return h.density().cwiseProduct(w.increments()).sum();
}

CMVector indicator_vector(const TimeGrid& grid, int dim, double a, double b, int coord) {
    require(dim >= 1 && coord >= 0 && coord < dim, "indicator_vector: coord out of range");
    require(a >= 0.0 && b <= 1.0, "indicator_vector: interval must lie in [0,1]");
    require(a <= b, "indicator_vector: inverted interval, a > b");
    // Work in cell-index arithmetic so boundary times are not subject to
    // floating-point drift of i*dt.
    const double n = grid.n_steps();
    const int first = static_cast<int>(std::ceil(a * n - 1e-9));
    const int last = static_cast<int>(std::floor(b * n + 1e-9));  // one past the last cell
    Eigen::MatrixXd density = Eigen::MatrixXd::Zero(grid.n_steps(), dim);
    for (int i = std::max(first, 0); i < std::min(last, grid.n_steps()); ++i) density(i, coord) = 1.0;
    return CMVector(grid, std::move(density));
}

CMVector basis_vector(const TimeGrid& grid, int dim, int cell, int coord) {
    require(cell >= 0 && cell < grid.n_steps(), "basis_vector: cell out of range");
    require(coord >= 0 && coord < dim, "basis_vector: coord out of range");
    Eigen::MatrixXd density = Eigen::MatrixXd::Zero(grid.n_steps(), dim);
    density(cell, coord) = 1.0 / std::sqrt(grid.dt());
    return CMVector(grid, std::move(density));
}

CMVector zero_vector(const TimeGrid& grid, int dim) {
    return CMVector(grid, Eigen::MatrixXd::Zero(grid.n_steps(), dim));
}

CMVector constant_density(const TimeGrid& grid, const Eigen::RowVectorXd& value) {
    return CMVector(grid, value.replicate(grid.n_steps(), 1));
}

DiscretePath shift_path(const DiscretePath& w, const CMVector& k, double eps) {
    require(w.grid() == k.grid() && w.dim() == k.dim(), "shift_path: shape mismatch");
    return DiscretePath(w.grid(), w.increments() + (eps * w.grid().dt()) * k.density());
}

Eigen::VectorXd cm_coeffs(const CMVector& h) {
    const int n = h.grid().n_steps(), d = h.dim();
    const double root_dt = std::sqrt(h.grid().dt());
    Eigen::VectorXd v(n * d);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) v(i * d + c) = h.density()(i, c) * root_dt;
    return v;
}

CMVector cm_from_coeffs(const TimeGrid& grid, int dim, const Eigen::VectorXd& v) {
    require(v.size() == static_cast<Eigen::Index>(grid.n_steps()) * dim,
            "cm_from_coeffs: size mismatch");
    const double inv_root_dt = 1.0 / std::sqrt(grid.dt());
    Eigen::MatrixXd density(grid.n_steps(), dim);
    for (int i = 0; i < grid.n_steps(); ++i)
        for (int c = 0; c < dim; ++c) density(i, c) = v(i * dim + c) * inv_root_dt;
    return CMVector(grid, std::move(density));
}

Eigen::VectorXd path_coeffs(const DiscretePath& w) {
    const int n = w.grid().n_steps(), d = w.dim();
    const double inv_root_dt = 1.0 / std::sqrt(w.grid().dt());
    Eigen::VectorXd x(n * d);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) x(i * d + c) = w.increments()(i, c) * inv_root_dt;
    return x;
}

DiscretePath path_from_coeffs(const TimeGrid& grid, int dim, const Eigen::VectorXd& x) {
    require(x.size() == static_cast<Eigen::Index>(grid.n_steps()) * dim,
            "path_from_coeffs: size mismatch");
    const double root_dt = std::sqrt(grid.dt());
    Eigen::MatrixXd inc(grid.n_steps(), dim);
    for (int i = 0; i < grid.n_steps(); ++i)
        for (int c = 0; c < dim; ++c) inc(i, c) = x(i * dim + c) * root_dt;
    return DiscretePath(grid, std::move(inc));
}

}  // namespace rotorlab
