// speclab: on-disk cache for phi solves.
// MIT license; see LICENSE at the repository root.
#include "speclab/phi_cache.hpp"

#include <unistd.h>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "speclab/detail/kernel_impl.hpp"
#include "speclab/detail/phi_impl.hpp"

static_assert(std::endian::native == std::endian::little,
              "cache files are little-endian; this build targets LE hosts only");

namespace speclab {
namespace {

using nlohmann::json;

std::mutex g_write_mutex;

// Residual acceptance for cached values: sqrt(tier epsilon) times the value
// scale. Fresh solves sit many orders below this (backward-stable LU,
// lossless decimal round-trip); corruption of even one node value lands far
// above it.
template <class Real> double residual_limit(const std::vector<double>& values) {
    double peak = 1.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    using std::sqrt;
    return to_double(sqrt(std::numeric_limits<Real>::epsilon())) * peak;
}

struct RawEntry {
    std::vector<double> x, w, phi_d;
    std::vector<std::string> phi_hp; // present iff tier wider than f64
    Tier tier;
};

std::optional<RawEntry> read_entry(const std::filesystem::path& bin,
                                   const std::filesystem::path& meta,
                                   const std::filesystem::path& hp, double a, Sign sign, int n) {
    std::ifstream jf(meta);
    if (!jf) return std::nullopt;
    json j;
    try {
        jf >> j;
    } catch (const json::exception&) {
        return std::nullopt;
    }
    if (!j.is_object() || j.value("schema", 0) != 1) return std::nullopt;
    if (j.value("format", "") != "phi-bin-1") return std::nullopt;
    if (j.value("sign", "") != sign_name(sign)) return std::nullopt;
    if (j.value("n", -1) != n) return std::nullopt;

    RawEntry e;
    try {
        e.tier = tier_from_name(j.value("tier", ""));
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }
    if (e.tier != tier_for_interval(a)) return std::nullopt; // ladder moved; rebuild

    std::ifstream bf(bin, std::ios::binary);
    if (!bf) return std::nullopt;
    std::vector<double> flat(std::size_t(n) * 3);
    bf.read(reinterpret_cast<char*>(flat.data()), std::streamsize(flat.size() * sizeof(double)));
    if (!bf || bf.gcount() != std::streamsize(flat.size() * sizeof(double))) return std::nullopt;

    e.x.resize(n);
    e.w.resize(n);
    e.phi_d.resize(n);
    for (int i = 0; i < n; ++i) {
        e.x[i] = flat[3 * std::size_t(i)];
        e.w[i] = flat[3 * std::size_t(i) + 1];
        e.phi_d[i] = flat[3 * std::size_t(i) + 2];
    }

    if (e.tier != Tier::f64) {
        std::ifstream hf(hp);
        if (!hf) return std::nullopt;
        std::string line;
        if (!std::getline(hf, line) || line != "speclab-phi-hp 1") return std::nullopt;
        if (!std::getline(hf, line) || line != tier_name(e.tier)) return std::nullopt;
        if (!std::getline(hf, line) || std::stoi(line) != n) return std::nullopt;
        e.phi_hp.reserve(n);
        while (std::getline(hf, line)) {
            if (!line.empty()) e.phi_hp.push_back(line);
        }
        if (int(e.phi_hp.size()) != n) return std::nullopt;
    }
    return e;
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

void store_entry(const std::filesystem::path& bin, const std::filesystem::path& meta,
                 const std::filesystem::path& hp, const PhiSolution& phi) {
    std::lock_guard<std::mutex> lock(g_write_mutex);
    const auto& impl = detail::PhiAccess::impl(phi);
    const int n = phi.n();

    std::string blob;
    blob.resize(std::size_t(n) * 3 * sizeof(double));
    {
        const std::vector<double> w = detail::visit_phi(phi, [&](const auto& e) {
            std::vector<double> out(e->ker->n);
            for (int i = 0; i < e->ker->n; ++i) out[i] = to_double(e->ker->w[i]);
            return out;
        });
        auto* p = reinterpret_cast<double*>(blob.data());
        for (int i = 0; i < n; ++i) {
            p[3 * std::size_t(i)] = impl.nodes_d[i];
            p[3 * std::size_t(i) + 1] = w[i];
            p[3 * std::size_t(i) + 2] = impl.values_d[i];
        }
    }
    atomic_write(bin, blob, true);

    if (impl.tier != Tier::f64) {
        std::ostringstream hs;
        hs << "speclab-phi-hp 1\n" << tier_name(impl.tier) << "\n" << n << "\n";
        detail::visit_phi(phi, [&](const auto& e) {
            for (int i = 0; i < e->ker->n; ++i) hs << to_decimal(e->phi[i]) << "\n";
        });
        atomic_write(hp, hs.str(), false);
    }

    json j;
    j["schema"] = 1;
    j["format"] = "phi-bin-1";
    j["a"] = phi.a();
    j["sign"] = sign_name(phi.sign());
    j["n"] = n;
    j["tier"] = tier_name(impl.tier);
    j["values"] = (impl.tier == Tier::f64) ? "bin" : "hp";
    atomic_write(meta, j.dump(2) + "\n", false);
}

// Rebuild the kernel, adopt the cached values, and accept only if the node
// residual is small; returns nothing on any mismatch.
std::optional<PhiSolution> adopt(const RawEntry& e, double a, Sign sign, int n) {
    KernelOperator ker = build_discretization(a, n);
    const std::vector<double> x_now = [&] {
        return detail::visit_kernel(ker, [&](const auto& eng) {
            std::vector<double> out(eng->n);
            for (int i = 0; i < eng->n; ++i) out[i] = to_double(eng->x[i]);
            return out;
        });
    }();
    for (int i = 0; i < n; ++i)
        if (std::abs(x_now[i] - e.x[i]) > 1e-12 * (1.0 + std::abs(x_now[i]))) return std::nullopt;

    std::optional<PhiSolution> out;
    detail::visit_kernel(ker, [&](const auto& eng) {
        using Real = typename std::decay_t<decltype(*eng)>::real_type;
        std::vector<Real> vals(n);
        if constexpr (std::is_same_v<Real, double>) {
            vals = e.phi_d;
        } else {
            for (int i = 0; i < n; ++i) vals[i] = real_from_decimal<Real>(e.phi_hp[i]);
        }
        auto phi = std::make_shared<const detail::PhiEngine<Real>>(eng, sign, std::move(vals));
        if (phi->residual_inf() > residual_limit<Real>(e.phi_d)) return;
        out = detail::wrap_phi_engine<Real>(std::move(phi));
    });
    return out;
}

} // namespace

std::string phi_cache_stem(double a, Sign sign, int n_resolved) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f_%s_%d", a, sign_name(sign), n_resolved);
    return buf;
}

PhiCache::PhiCache(std::filesystem::path root) : root_(std::move(root)) {
    if (!root_.empty()) std::filesystem::create_directories(root_ / "phi");
}

std::filesystem::path PhiCache::entry_path(double a, Sign sign, int n,
                                           const std::string& ext) const {
    if (!enabled()) throw InvalidArgument("cache is disabled, no entry paths exist");
    return root_ / "phi" / (phi_cache_stem(a, sign, effective_nodes(a, n)) + "." + ext);
}

PhiSolution PhiCache::load_or_solve(double a, Sign sign, int n) const {
    if (!enabled()) return solve_phi(a, sign, n);
    const int n_eff = effective_nodes(a, n);
    const auto bin = entry_path(a, sign, n, "bin");
    const auto meta = entry_path(a, sign, n, "json");
    const auto hp = entry_path(a, sign, n, "hp");

    if (auto raw = read_entry(bin, meta, hp, a, sign, n_eff)) {
        if (auto phi = adopt(*raw, a, sign, n_eff)) return *phi;
    }
    PhiSolution phi = solve_phi(a, sign, n);
    store_entry(bin, meta, hp, phi);
    return phi;
}

PhiSolution solve_phi_cached(const std::filesystem::path& cache_root, double a, Sign sign, int n) {
    return PhiCache(cache_root).load_or_solve(a, sign, n);
}

} // namespace speclab
