// speclab: Dirac potential from the kernel spectral data, plus the tabulated
// interpolant the trajectory integrator reads.
// MIT license; see LICENSE at the repository root.
#include "speclab/potential.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>

#include "nlohmann/json.hpp"

#include "speclab/detail/kernel_impl.hpp"
#include "speclab/detail/phi_engine.hpp"
#include "speclab/errors.hpp"

namespace speclab {
namespace {

using json = nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "potential cache assumes a little-endian host");

constexpr double k_route_tol = 1e-6; // dual-route agreement, relative
constexpr double k_fd_step = 1e-2;   // u step for the determinant derivative

std::mutex g_write_mutex;

struct PointValues {
    double mu;
    double logdet_plus;
    double logdet_minus;
};

// Resolvent route at one point. phi+(a) and phi-(a) are individually huge once
// the spectral gap closes (each grows like exp(4 pi a^2)) and cancel almost
// completely in the sum, so everything stays in the working scalar until the
// final narrowing.
PointValues resolvent_point(double a, int n_resolved) {
    PointValues out{};
    dispatch_tier(tier_for_interval(a), [&](auto tag) {
        using Real = typename decltype(tag)::real;
        auto eng = std::make_shared<const detail::CosineEngine<Real>>(a, n_resolved);
        detail::PhiEngine<Real> pp(eng, Sign::plus);
        detail::PhiEngine<Real> pm(eng, Sign::minus);
        out.mu = to_double(eng->a * (pp.eval(eng->a) + pm.eval(eng->a)));
        out.logdet_plus = to_double(eng->log_det_lu(Sign::plus));
        out.logdet_minus = to_double(eng->log_det_lu(Sign::minus));
    });
    return out;
}

double delta_logdet(double a, int n_resolved) {
    double out = 0.0;
    dispatch_tier(tier_for_interval(a), [&](auto tag) {
        using Real = typename decltype(tag)::real;
        const detail::CosineEngine<Real> eng(a, n_resolved);
        out = to_double(eng.log_det_lu(Sign::plus) - eng.log_det_lu(Sign::minus));
    });
    return out;
}

// d/du of log det(1+C) - log det(1-C) by central differences with one
// Richardson pass. The node count is pinned to the centre value so the
// difference never straddles a budget step.
double fd_point(double u, int n_resolved) {
    auto central = [&](double h) {
        return (delta_logdet(std::exp(u + h), n_resolved) -
                delta_logdet(std::exp(u - h), n_resolved)) /
               (2.0 * h);
    };
    const double d1 = central(k_fd_step);
    const double d2 = central(k_fd_step / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

void gate_routes(double u, double resolvent, double finite_difference) {
    const double scale = std::max(std::abs(resolvent), 1e-12);
    if (!(std::abs(resolvent - finite_difference) <= k_route_tol * scale)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "mu routes disagree at u = " << u << ": resolvent " << resolvent
            << " vs determinant derivative " << finite_difference;
        throw CrossCheckError(msg.str());
    }
}

// Second-derivative moments of the not-a-knot cubic through (i*h, g[i]).
// Third-derivative continuity at the first and last interior knots reduces the
// adjacent moments to plain second differences; the rest is tridiagonal.
std::vector<double> spline_moments(const std::vector<double>& g, double h) {
    const int m = int(g.size()) - 1; // intervals
    std::vector<double> mm(m + 1, 0.0);
    if (m < 3) return mm;
    auto d2 = [&](int i) { return (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h); };
    mm[1] = d2(1);
    mm[m - 1] = d2(m - 1);
    const int kk = m - 3; // unknowns mm[2..m-2]
    if (kk > 0) {
        std::vector<double> diag(kk, 2.0 / 3.0), rhs(kk);
        for (int i = 2; i <= m - 2; ++i) rhs[i - 2] = d2(i);
        rhs[0] -= mm[1] / 6.0;
        rhs[kk - 1] -= mm[m - 1] / 6.0;
        for (int i = 1; i < kk; ++i) {
            const double w = (1.0 / 6.0) / diag[i - 1];
            diag[i] -= w * (1.0 / 6.0);
            rhs[i] -= w * rhs[i - 1];
        }
        mm[m - 2] = rhs[kk - 1] / diag[kk - 1];
        for (int i = kk - 2; i >= 0; --i) mm[i + 2] = (rhs[i] - (1.0 / 6.0) * mm[i + 3]) / diag[i];
    }
    mm[0] = 2.0 * mm[1] - mm[2];
    mm[m] = 2.0 * mm[m - 1] - mm[m - 2];
    return mm;
}

std::string table_stem(double u_min, double u_max, int steps, int n) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "table_%.9f_%.9f_%d_%d", u_min, u_max, steps, n);
    return buf;
}

void atomic_write(const std::filesystem::path& target, const std::string& bytes, bool binary) {
    std::filesystem::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, binary ? std::ios::binary : std::ios::out);
        if (!out) throw IoError("cannot open cache temp file " + tmp.string());
        out.write(bytes.data(), std::streamsize(bytes.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

} // namespace

struct PotentialTable::Data {
    bool is_zero = false;
    double u0 = 0.0, du = 0.0;
    std::vector<double> u, mu, ldp, ldm;
    std::vector<double> g;  // mu * exp(-2u): O(1) across the range, so the
    std::vector<double> m2; // cubic runs on it instead of the raw potential
};

namespace {

void build_spline(PotentialTable::Data& d) {
    d.g.resize(d.u.size());
    for (std::size_t i = 0; i < d.u.size(); ++i) d.g[i] = d.mu[i] * std::exp(-2.0 * d.u[i]);
    d.m2 = spline_moments(d.g, d.du);
}

} // namespace

bool PotentialTable::zero() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->is_zero;
}

double PotentialTable::u_min() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->is_zero ? -std::numeric_limits<double>::infinity() : d_->u.front();
}

double PotentialTable::u_max() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->is_zero ? std::numeric_limits<double>::infinity() : d_->u.back();
}

const std::vector<double>& PotentialTable::u_grid() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->u;
}

const std::vector<double>& PotentialTable::mu_values() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->mu;
}

const std::vector<double>& PotentialTable::logdet_plus() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->ldp;
}

const std::vector<double>& PotentialTable::logdet_minus() const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    return d_->ldm;
}

double PotentialTable::mu_at(double u) const {
    if (!d_) throw InvalidArgument("empty PotentialTable");
    const Data& t = *d_;
    if (t.is_zero) return 0.0;
    if (!(u >= t.u.front() && u <= t.u.back())) {
        std::ostringstream msg;
        msg << "mu_at: u = " << u << " outside table range [" << t.u.front() << ", " << t.u.back()
            << "]";
        throw RangeError(msg.str());
    }
    const int m = int(t.u.size()) - 1;
    const double h = t.du;
    int i = std::clamp(int((u - t.u0) / h), 0, m - 1);
    const double tl = u - (t.u0 + i * h);
    const double tr = h - tl;
    const double g = t.m2[i] * tr * tr * tr / (6.0 * h) + t.m2[i + 1] * tl * tl * tl / (6.0 * h) +
                     (t.g[i] / h - t.m2[i] * h / 6.0) * tr +
                     (t.g[i + 1] / h - t.m2[i + 1] * h / 6.0) * tl;
    return g * std::exp(2.0 * u);
}

MuRoutes mu_routes(double u, int n) {
    if (!std::isfinite(u)) throw InvalidArgument("mu: u must be finite");
    const double a = std::exp(u);
    const int n_res = effective_nodes(a, n);
    const PointValues p = resolvent_point(a, n_res);
    return {p.mu, fd_point(u, n_res)};
}

double mu(double u, int n) {
    const MuRoutes r = mu_routes(u, n);
    gate_routes(u, r.resolvent, r.finite_difference);
    return r.resolvent;
}

namespace {

std::optional<std::shared_ptr<PotentialTable::Data>> load_table(const std::filesystem::path& root,
                                                                double u_min, double u_max,
                                                                int steps, int n) {
    const std::string stem = table_stem(u_min, u_max, steps, n);
    const auto meta = root / "potential" / (stem + ".json");
    const auto bin = root / "potential" / (stem + ".bin");

    std::ifstream jf(meta);
    if (!jf) return std::nullopt;
    json j;
    try {
        jf >> j;
    } catch (const json::exception&) {
        return std::nullopt;
    }
    if (!j.is_object() || j.value("schema", 0) != 1) return std::nullopt;
    if (j.value("format", "") != "potential-bin-1") return std::nullopt;
    if (j.value("steps", -1) != steps || j.value("n", -1) != n) return std::nullopt;
    try {
        if (real_from_decimal<double>(j.value("u_min", "")) != u_min) return std::nullopt;
        if (real_from_decimal<double>(j.value("u_max", "")) != u_max) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }

    std::ifstream bf(bin, std::ios::binary);
    if (!bf) return std::nullopt;
    const std::size_t rows = std::size_t(steps) + 1;
    std::vector<double> raw(rows * 4);
    bf.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size() * sizeof(double)));
    if (!bf || bf.gcount() != std::streamsize(raw.size() * sizeof(double))) return std::nullopt;
    if (bf.peek() != std::char_traits<char>::eof()) return std::nullopt;

    auto d = std::make_shared<PotentialTable::Data>();
    d->u0 = u_min;
    d->du = (u_max - u_min) / steps;
    d->u.resize(rows);
    d->mu.resize(rows);
    d->ldp.resize(rows);
    d->ldm.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        d->u[i] = raw[4 * i];
        d->mu[i] = raw[4 * i + 1];
        d->ldp[i] = raw[4 * i + 2];
        d->ldm[i] = raw[4 * i + 3];
        for (int k = 0; k < 4; ++k)
            if (!std::isfinite(raw[4 * i + k])) return std::nullopt;
        if (!(d->mu[i] > 0.0)) return std::nullopt;
        if (i > 0 && !(d->u[i] > d->u[i - 1])) return std::nullopt;
    }
    if (d->u.front() != u_min || d->u.back() != u_max) return std::nullopt;
    return d;
}

void store_table(const std::filesystem::path& root, const PotentialTable::Data& d, int steps,
                 int n) {
    std::lock_guard<std::mutex> lock(g_write_mutex);
    const auto dir = root / "potential";
    std::filesystem::create_directories(dir);
    const std::string stem = table_stem(d.u.front(), d.u.back(), steps, n);

    std::string blob;
    blob.resize(d.u.size() * 4 * sizeof(double));
    double* p = reinterpret_cast<double*>(blob.data());
    for (std::size_t i = 0; i < d.u.size(); ++i) {
        p[4 * i] = d.u[i];
        p[4 * i + 1] = d.mu[i];
        p[4 * i + 2] = d.ldp[i];
        p[4 * i + 3] = d.ldm[i];
    }
    atomic_write(dir / (stem + ".bin"), blob, true);

    json j;
    j["schema"] = 1;
    j["format"] = "potential-bin-1";
    j["u_min"] = to_decimal(d.u.front());
    j["u_max"] = to_decimal(d.u.back());
    j["steps"] = steps;
    j["n"] = n;
    j["points"] = int(d.u.size());
    atomic_write(dir / (stem + ".json"), j.dump(2) + "\n", false);
}

} // namespace

PotentialTable build_potential_table(double u_min, double u_max, int steps, int n,
                                     const std::filesystem::path& cache_root) {
    if (!std::isfinite(u_min) || !std::isfinite(u_max) || !(u_min < u_max))
        throw InvalidArgument("build_potential_table: need finite u_min < u_max");
    if (steps < 8) throw InvalidArgument("build_potential_table: need at least 8 steps");

    if (!cache_root.empty()) {
        if (auto d = load_table(cache_root, u_min, u_max, steps, n)) {
            build_spline(**d);
            PotentialTable out;
            out.d_ = std::move(*d);
            return out;
        }
    }

    auto d = std::make_shared<PotentialTable::Data>();
    const std::size_t rows = std::size_t(steps) + 1;
    d->u0 = u_min;
    d->du = (u_max - u_min) / steps;
    d->u.resize(rows);
    d->mu.resize(rows);
    d->ldp.resize(rows);
    d->ldm.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double u = (i == rows - 1) ? u_max : u_min + double(i) * d->du;
        const double a = std::exp(u);
        const PointValues p = resolvent_point(a, effective_nodes(a, n));
        d->u[i] = u;
        d->mu[i] = p.mu;
        d->ldp[i] = p.logdet_plus;
        d->ldm[i] = p.logdet_minus;
        if (!(p.mu > 0.0)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "potential positivity fails at u = " << u << ": mu = " << p.mu;
            throw CrossCheckError(msg.str());
        }
    }

    // The potential decays monotonically on the far left; an inversion there
    // means the discretization broke down, not that the tail is interesting.
    for (std::size_t i = 0; i + 1 < rows && d->u[i + 1] < -1.5; ++i) {
        if (!(d->mu[i] < d->mu[i + 1])) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "left tail of mu is not monotone at u = " << d->u[i];
            throw CrossCheckError(msg.str());
        }
    }

    // Spot-check the determinant-derivative route against the stored values.
    auto gate_at = [&](std::size_t i) {
        const double a = std::exp(d->u[i]);
        gate_routes(d->u[i], d->mu[i], fd_point(d->u[i], effective_nodes(a, n)));
    };
    for (std::size_t i = 0; i < rows; i += 64) gate_at(i);
    gate_at(rows - 1);

    if (!cache_root.empty()) store_table(cache_root, *d, steps, n);
    build_spline(*d);
    PotentialTable out;
    out.d_ = std::move(d);
    return out;
}

PotentialTable zero_potential() {
    auto d = std::make_shared<PotentialTable::Data>();
    d->is_zero = true;
    PotentialTable out;
    out.d_ = std::move(d);
    return out;
}

} // namespace speclab
