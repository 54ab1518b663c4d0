#include "rotorlab/rotor.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace rotorlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// +1 for angle 0, -1 for angle pi; anything else is invalid on a
// 1-dimensional block.
double one_dim_phase(double angle) {
    const double wrapped = std::fmod(std::fmod(angle, kTwoPi) + kTwoPi, kTwoPi);
    if (std::abs(wrapped) < 1e-9 || std::abs(wrapped - kTwoPi) < 1e-9) return 1.0;
    if (std::abs(wrapped - std::numbers::pi) < 1e-9) return -1.0;
    throw std::invalid_argument("Rotor: 1-dim spectral block requires angle 0 or pi, got " +
                                std::to_string(angle));
}

void rotate_block_inplace(Eigen::VectorXd& v, const SpectralResolution::Block& block,
                          double angle, bool adjoint) {
    const double a = adjoint ? -angle : angle;
    if (block.dim == 1) {
        v(block.offset) *= one_dim_phase(a);
        return;
    }
    const double c = std::cos(a), s = std::sin(a);
    const double x = v(block.offset), y = v(block.offset + 1);
    v(block.offset) = c * x - s * y;
    v(block.offset + 1) = s * x + c * y;
}

}  // namespace

SpectralResolution::SpectralResolution(TimeGrid grid, int dim, Eigen::MatrixXd basis,
                                       std::vector<Block> blocks)
    : grid_(grid), dim_(dim), basis_(std::move(basis)), blocks_(std::move(blocks)) {
    const int n = grid_.n_steps() * dim_;
    require(dim_ >= 1, "SpectralResolution: dim must be >= 1");
    require(basis_.rows() == n && basis_.cols() == n,
            "SpectralResolution: basis must be square of the full space dimension");
    require(!blocks_.empty(), "SpectralResolution: no blocks");

    int covered = 0;
    double prev_theta = -1.0;
    for (const Block& b : blocks_) {
        require(b.dim == 1 || b.dim == 2, "SpectralResolution: block dim must be 1 or 2");
        require(b.offset == covered, "SpectralResolution: blocks must tile the basis columns");
        require(b.theta >= 0.0 && b.theta < kTwoPi, "SpectralResolution: theta outside [0, 2pi)");
        require(b.theta >= prev_theta, "SpectralResolution: thetas must be nondecreasing");
        prev_theta = b.theta;
        covered += b.dim;
    }
    require(covered == n, "SpectralResolution: blocks must span the full space");

    const double defect =
        (basis_.transpose() * basis_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    require(defect < 1e-12, "SpectralResolution: basis not orthonormal (defect " +
                                std::to_string(defect) + ")");
    canonical_ = basis_.isIdentity(0.0);
}

SpectralResolution SpectralResolution::paired_indicator(const TimeGrid& grid, int dim) {
    const int n = grid.n_steps() * dim;
    const int m = (n + 1) / 2;
    std::vector<double> thetas(m);
    for (int j = 0; j < m; ++j) thetas[j] = kTwoPi * (j + 0.5) / m;
    return paired_indicator(grid, dim, std::move(thetas));
}

SpectralResolution SpectralResolution::paired_indicator(const TimeGrid& grid, int dim,
                                                        std::vector<double> thetas) {
    const int n = grid.n_steps() * dim;
    const int m = (n + 1) / 2;
    require(static_cast<int>(thetas.size()) == m,
            "paired_indicator: need one theta per block (" + std::to_string(m) + ")");
    std::vector<Block> blocks(m);
    for (int j = 0; j < m; ++j)
        blocks[j] = Block{thetas[j], (2 * j + 1 < n) ? 2 : 1, 2 * j};
    return SpectralResolution(grid, dim, Eigen::MatrixXd::Identity(n, n), std::move(blocks));
}

std::vector<SpectralMass> spectral_measure(const SpectralResolution& res, const CMVector& h) {
    require(h.grid() == res.grid() && h.dim() == res.path_dim(), "spectral_measure: shape mismatch");
    require(h.squared_norm() > 0.0, "spectral_measure: h must be nonzero");
    const Eigen::VectorXd v = cm_coeffs(h);
    const Eigen::VectorXd c = res.canonical() ? v : Eigen::VectorXd(res.basis().transpose() * v);
    std::vector<SpectralMass> out;
    out.reserve(res.n_blocks());
    for (const auto& b : res.blocks())
        out.push_back({b.theta, c.segment(b.offset, b.dim).squaredNorm()});
    return out;
}

PhaseLaw::PhaseLaw(Kind kind, std::vector<std::pair<double, double>> atoms)
    : kind_(kind), atoms_(std::move(atoms)) {}

PhaseLaw PhaseLaw::constant(double eta0) { return PhaseLaw(Kind::constant, {{eta0, 1.0}}); }

PhaseLaw PhaseLaw::uniform() { return PhaseLaw(Kind::uniform, {}); }

PhaseLaw PhaseLaw::two_point(double a, double b, double p_a) {
    require(p_a >= 0.0 && p_a <= 1.0, "PhaseLaw::two_point: probability outside [0,1]");
    return PhaseLaw(Kind::two_point, {{a, p_a}, {b, 1.0 - p_a}});
}

PhaseLaw PhaseLaw::custom_table(std::vector<std::pair<double, double>> atoms) {
    require(!atoms.empty(), "PhaseLaw::custom_table: empty table");
    double total = 0.0;
    for (const auto& [angle, prob] : atoms) {
        require(prob >= 0.0, "PhaseLaw::custom_table: negative probability");
        (void)angle;
        total += prob;
    }
    require(std::abs(total - 1.0) < 1e-12, "PhaseLaw::custom_table: probabilities must sum to 1");
    return PhaseLaw(Kind::custom_table, std::move(atoms));
}

double PhaseLaw::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::constant:
            return atoms_.front().first;
        case Kind::uniform: {
            const double angle = kTwoPi * rng.uniform();
            return angle >= kTwoPi ? 0.0 : angle;
        }
        case Kind::two_point:
        case Kind::custom_table: {
            const double u = rng.uniform();
            double cdf = 0.0;
            for (const auto& [angle, prob] : atoms_) {
                cdf += prob;
                if (u <= cdf) return angle;
            }
            return atoms_.back().first;
        }
    }
    throw std::logic_error("PhaseLaw: unknown kind");
}

std::complex<double> PhaseLaw::characteristic() const {
    if (kind_ == Kind::uniform) return {0.0, 0.0};
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [angle, prob] : atoms_) sum += prob * std::polar(1.0, angle);
    return sum;
}

Rotor Rotor::identity() { return Rotor(Impl{Identity{}}); }

Rotor Rotor::spectral(SpectralResolution res, std::vector<double> block_angles) {
    require(static_cast<int>(block_angles.size()) == res.n_blocks(),
            "Rotor::spectral: need one angle per block");
    for (int j = 0; j < res.n_blocks(); ++j)
        if (res.blocks()[j].dim == 1) one_dim_phase(block_angles[j]);  // validity check
    return Rotor(Impl{Spectral{std::make_shared<SpectralResolution>(std::move(res)),
                               std::move(block_angles)}});
}

Rotor Rotor::adapted_matrix(OrthogonalMap sigma) {
    require(static_cast<bool>(sigma), "Rotor::adapted_matrix: null callback");
    return Rotor(Impl{Adapted{std::move(sigma)}});
}

Rotor Rotor::sign(DiscretePath aux) {
    require(aux.dim() == 1, "Rotor::sign: auxiliary path must be 1-dimensional");
    const int n = aux.grid().n_steps();
    Eigen::VectorXd signs(n);
    double value = 0.0;  // left endpoint: b(s_0) = 0, sign(0) := +1
    for (int i = 0; i < n; ++i) {
        signs(i) = value < 0.0 ? -1.0 : 1.0;
        value += aux.increments()(i, 0);
    }
    auto shared = std::make_shared<DiscretePath>(std::move(aux));
    return Rotor(Impl{Sign{std::move(shared), std::move(signs)}});
}

Rotor make_sign_rotor(const DiscretePath& aux) { return Rotor::sign(aux); }

bool Rotor::is_identity() const noexcept { return std::holds_alternative<Identity>(impl_); }
bool Rotor::is_spectral() const noexcept { return std::holds_alternative<Spectral>(impl_); }
bool Rotor::is_adapted_matrix() const noexcept { return std::holds_alternative<Adapted>(impl_); }
bool Rotor::is_sign() const noexcept { return std::holds_alternative<Sign>(impl_); }

const SpectralResolution& Rotor::resolution() const {
    return *std::get<Spectral>(impl_).res;
}

const std::vector<double>& Rotor::block_angles() const {
    return std::get<Spectral>(impl_).angles;
}

const Eigen::VectorXd& Rotor::signs() const { return std::get<Sign>(impl_).signs; }

CMVector Rotor::apply(const DiscretePath& w, const CMVector& h) const {
    return apply_impl(w, h, /*adjoint=*/false);
}

CMVector Rotor::apply_adjoint(const DiscretePath& w, const CMVector& h) const {
    return apply_impl(w, h, /*adjoint=*/true);
}

CMVector Rotor::apply_impl(const DiscretePath& w, const CMVector& h, bool adjoint) const {
    require(w.grid() == h.grid() && w.dim() == h.dim(), "Rotor::apply: path/vector shape mismatch");

    if (std::holds_alternative<Identity>(impl_)) return h;

    if (const auto* sp = std::get_if<Spectral>(&impl_)) {
        const SpectralResolution& res = *sp->res;
        require(h.grid() == res.grid() && h.dim() == res.path_dim(),
                "Rotor::apply: vector does not live on the resolution's space");
        Eigen::VectorXd c = res.canonical() ? cm_coeffs(h)
                                            : Eigen::VectorXd(res.basis().transpose() * cm_coeffs(h));
        for (int j = 0; j < res.n_blocks(); ++j)
            rotate_block_inplace(c, res.blocks()[j], sp->angles[j], adjoint);
        if (!res.canonical()) c = res.basis() * c;
        return cm_from_coeffs(h.grid(), h.dim(), c);
    }

    if (const auto* ad = std::get_if<Adapted>(&impl_)) {
        const int d = h.dim();
        Eigen::MatrixXd density(h.grid().n_steps(), d);
        for (int i = 0; i < h.grid().n_steps(); ++i) {
            Eigen::MatrixXd sigma = ad->sigma(i, w);
            require(sigma.rows() == d && sigma.cols() == d,
                    "Rotor::adapted_matrix: sigma must be d x d");
            const double defect =
                (sigma * sigma.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
            if (defect > 1e-8)
                throw std::invalid_argument(
                    "Rotor::adapted_matrix: sigma is not orthogonal at step " + std::to_string(i) +
                    " (defect " + std::to_string(defect) + ")");
            if (adjoint)
                density.row(i) = h.density().row(i) * sigma;  // sigma^T hdot, written row-wise
            else
                density.row(i) = h.density().row(i) * sigma.transpose();
        }
        return CMVector(h.grid(), std::move(density));
    }

    const auto& sg = std::get<Sign>(impl_);
    require(sg.aux->grid() == h.grid(), "Rotor::sign: auxiliary path grid mismatch");
    Eigen::MatrixXd density = h.density();
    for (int i = 0; i < density.rows(); ++i) density.row(i) *= sg.signs(i);
    return CMVector(h.grid(), std::move(density));  // signs are unimodular: self-adjoint
}

Eigen::MatrixXd Rotor::matrix(const DiscretePath& w) const {
    const TimeGrid& grid = w.grid();
    const int d = w.dim();
    const int n = grid.n_steps() * d;
    Eigen::MatrixXd m(n, n);
    for (int cell = 0; cell < grid.n_steps(); ++cell)
        for (int c = 0; c < d; ++c)
            m.col(cell * d + c) = cm_coeffs(apply(w, basis_vector(grid, d, cell, c)));
    return m;
}

Rotor resolve_iid_phases(const SpectralResolution& res, const PhaseLaw& law, RngStream stream) {
    Rng rng(stream);
    std::vector<double> angles(res.n_blocks());
    for (int j = 0; j < res.n_blocks(); ++j) {
        angles[j] = law.sample(rng);
        if (res.blocks()[j].dim == 1) one_dim_phase(angles[j]);
    }
    return Rotor::spectral(res, std::move(angles));
}

RotorFamily RotorFamily::constant(Rotor rotor) {
    return RotorFamily([rotor = std::move(rotor)](int) { return rotor; });
}

RotorFamily RotorFamily::iid_phase(SpectralResolution res, PhaseLaw law, RngStream stream) {
    auto shared = std::make_shared<SpectralResolution>(std::move(res));
    return RotorFamily([shared, law = std::move(law), stream](int level) {
        return resolve_iid_phases(*shared, law, stream.substream(static_cast<std::uint64_t>(level)));
    });
}

RotorFamily RotorFamily::sign(const TimeGrid& grid, RngStream stream) {
    return RotorFamily([grid, stream](int level) {
        return make_sign_rotor(
            sample_brownian(grid, 1, stream.substream(static_cast<std::uint64_t>(level))));
    });
}

Rotor RotorFamily::at_level(int level) const {
    if (level < 1) throw std::invalid_argument("RotorFamily::at_level: level must be >= 1");
    return make_(level);
}

Eigen::MatrixXd random_orthogonal(int n, RngStream stream) {
    Rng rng(stream);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

}  // namespace rotorlab
