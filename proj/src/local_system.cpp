#include "novikov/local_system.hpp"

#include <cstdio>

#include "novikov/error.hpp"

namespace novikov {

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

LocalSystem::LocalSystem(ComplexPtr base, std::vector<Rational> weights) : base_(std::move(base)), weights_(std::move(weights)) {
    if (!base_) throw Error(ErrorCode::InvalidSystem, "local system without base complex");
    if (weights_.size() != base_->count(1))
        throw Error(ErrorCode::InvalidSystem, "expected " + std::to_string(base_->count(1)) + " edge weights, got " +
                                                  std::to_string(weights_.size()));
}

LocalSystem LocalSystem::trivial(const ComplexPtr& base) { return LocalSystem(base, std::vector<Rational>(base->count(1), Rational(1))); }

LocalSystem LocalSystem::from_edges(const ComplexPtr& base, const std::map<std::pair<Vertex, Vertex>, Rational>& edges) {
    std::vector<Rational> w(base->count(1), Rational(1));
    for (const auto& [uv, t] : edges) {
        auto [u, v] = uv;
        Rational value = t;
        if (u > v) {
            std::swap(u, v);
            if (value.is_zero()) throw Error(ErrorCode::InvalidSystem, "zero edge weight");
            value = value.inverse();
        }
        Simplex e{u, v};
        auto idx = base->index_of(e);
        if (!idx) throw Error(ErrorCode::InvalidSystem, "edge [" + std::to_string(u) + ", " + std::to_string(v) + "] is not in the complex");
        w[*idx] = value;
    }
    return LocalSystem(base, std::move(w));
}

const Rational& LocalSystem::weight(Vertex u, Vertex v) const {
    Simplex e{u, v};
    auto idx = base_->index_of(e);
    if (!idx) throw Error(ErrorCode::PathNotInComplex, "edge [" + std::to_string(u) + ", " + std::to_string(v) + "] is not in the complex");
    return weights_[*idx];
}

Rational LocalSystem::transport(Vertex to, Vertex from) const {
    if (to == from) return Rational(1);
    if (to < from) return weight(to, from);
    return weight(from, to).inverse();
}

bool LocalSystem::is_trivial() const {
    for (const auto& w : weights_)
        if (!w.is_one()) return false;
    return true;
}

std::string LocalSystem::fingerprint() const {
    std::uint64_t h = fnv1a("novikov-system-v1;");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const Simplex& e = base_->simplex(1, i);
        h = fnv1a(std::to_string(e[0]) + "-" + std::to_string(e[1]) + ":" + weights_[i].to_fraction_string() + ";", h);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string CocycleViolation::message() const {
    std::string s = "CocycleViolation on [";
    for (std::size_t i = 0; i < triangle.size(); ++i) s += (i ? ", " : "") + std::to_string(triangle[i]);
    s += "]";
    if (triangle.size() == 2) return s + ": weight " + lhs.to_string() + " is not positive";
    return s + ": t(uw) = " + lhs.to_string() + " but t(uv) * t(vw) = " + rhs.to_string();
}

std::optional<CocycleViolation> validate_system(const LocalSystem& s) {
    const Complex& c = *s.base();
    for (std::size_t i = 0; i < c.count(1); ++i)
        if (s.weight(i).sign() <= 0) return CocycleViolation{c.simplex(1, i), s.weight(i), Rational()};
    for (const auto& tri : c.simplices(2)) {
        const Rational& uw = s.weight(tri[0], tri[2]);
        Rational prod = s.weight(tri[0], tri[1]) * s.weight(tri[1], tri[2]);
        if (uw != prod) return CocycleViolation{tri, uw, prod};
    }
    return std::nullopt;
}

Rational monodromy(const LocalSystem& s, std::span<const Vertex> loop) {
    if (loop.size() < 2 || loop.front() != loop.back())
        throw Error(ErrorCode::PathNotInComplex, "loop must return to its starting vertex");
    Rational m(1);
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
        Vertex a = loop[i];
        Vertex b = loop[i + 1];
        if (a == b) continue;
        Simplex e{std::min(a, b), std::max(a, b)};
        if (!s.base()->contains(e))
            throw Error(ErrorCode::PathNotInComplex, "step " + std::to_string(a) + " -> " + std::to_string(b) + " is not an edge");
        m *= s.transport(a, b);
    }
    return m;
}

LocalSystem gauge_transform(const LocalSystem& s, std::span<const Rational> g) {
    const Complex& c = *s.base();
    if (g.size() != c.vertex_count()) throw Error(ErrorCode::NonpositiveGauge, "gauge must assign a value to every vertex");
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g[v].sign() <= 0) throw Error(ErrorCode::NonpositiveGauge, "gauge value at vertex " + std::to_string(v) + " is not positive");
    std::vector<Rational> w;
    w.reserve(c.count(1));
    for (std::size_t i = 0; i < c.count(1); ++i) {
        const Simplex& e = c.simplex(1, i);
        w.push_back(g[e[1]] * s.weight(i) / g[e[0]]);
    }
    return LocalSystem(s.base(), std::move(w));
}

LocalSystem pullback_system(const SimplicialMap& f, const LocalSystem& s) {
    const Complex& src = *f.source;
    std::vector<Rational> w;
    w.reserve(src.count(1));
    for (const auto& e : src.simplices(1)) w.push_back(s.transport(f.vertex_image.at(e[0]), f.vertex_image.at(e[1])));
    return LocalSystem(f.source, std::move(w));
}

} // namespace novikov
