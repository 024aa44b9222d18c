#include "novikov/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "novikov/error.hpp"

namespace novikov {

namespace {

std::string format_simplex(std::span<const Vertex> s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
    os << ']';
    return os.str();
}

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Simplex drop(std::span<const Vertex> s, std::size_t i) {
    Simplex face;
    face.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i) face.push_back(s[k]);
    return face;
}

} // namespace

std::string ValidationError::message() const {
    switch (kind) {
    case Kind::MissingFace:
        return "MissingFace: face " + format_simplex(detail) + " of simplex " + format_simplex(simplex) + " is not listed";
    case Kind::DuplicateSimplex: return "DuplicateSimplex: " + format_simplex(simplex) + " listed more than once";
    case Kind::VertexOutOfRange: return "VertexOutOfRange: simplex " + format_simplex(simplex);
    case Kind::DegenerateSimplex: return "DegenerateSimplex: repeated vertex in " + format_simplex(simplex);
    }
    return "ValidationError";
}

Complex::Complex(std::size_t vertex_count, std::vector<Simplex> simplices) : vertex_count_(vertex_count) {
    for (auto& s : simplices) {
        if (s.empty()) continue;
        std::sort(s.begin(), s.end());
        std::size_t p = s.size() - 1;
        if (by_dim_.size() <= p) by_dim_.resize(p + 1);
        by_dim_[p].push_back(std::move(s));
    }
    for (auto& level : by_dim_) std::sort(level.begin(), level.end());
}

ComplexPtr Complex::make(std::size_t vertex_count, std::vector<Simplex> simplices, std::string name) {
    auto c = std::make_shared<Complex>(vertex_count, std::move(simplices));
    if (auto err = validate_complex(*c)) throw Error(ErrorCode::InvalidComplex, err->message());
    c->name_ = std::move(name);
    return c;
}

ComplexPtr Complex::closure(std::size_t vertex_count, const std::vector<Simplex>& generators, std::string name) {
    std::vector<std::set<Simplex>> levels;
    auto insert = [&](Simplex s) {
        std::size_t p = s.size() - 1;
        if (levels.size() <= p) levels.resize(p + 1);
        return levels[p].insert(std::move(s)).second;
    };
    for (Vertex v = 0; v < vertex_count; ++v) insert({v});
    for (Simplex g : generators) {
        if (g.empty()) continue;
        std::sort(g.begin(), g.end());
        if (std::adjacent_find(g.begin(), g.end()) != g.end())
            throw Error(ErrorCode::InvalidComplex, "DegenerateSimplex: repeated vertex in " + format_simplex(g));
        if (g.back() >= vertex_count) throw Error(ErrorCode::InvalidComplex, "VertexOutOfRange: simplex " + format_simplex(g));
        // enumerate all nonempty subsets
        std::size_t n = g.size();
        if (n > 20) throw Error(ErrorCode::InvalidComplex, "simplex dimension too large for closure");
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Simplex face;
            for (std::size_t k = 0; k < n; ++k)
                if (mask & (1u << k)) face.push_back(g[k]);
            insert(std::move(face));
        }
    }
    std::vector<Simplex> all;
    for (auto& level : levels) all.insert(all.end(), level.begin(), level.end());
    return make(vertex_count, std::move(all), std::move(name));
}

std::size_t Complex::count(int p) const noexcept {
    if (p < 0 || p >= static_cast<int>(by_dim_.size())) return 0;
    return by_dim_[p].size();
}

const std::vector<Simplex>& Complex::simplices(int p) const {
    static const std::vector<Simplex> empty;
    if (p < 0 || p >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[p];
}

std::size_t Complex::total_count() const noexcept {
    std::size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
}

std::optional<std::size_t> Complex::index_of(std::span<const Vertex> s) const {
    if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
    const auto& level = by_dim_[s.size() - 1];
    auto it = std::lower_bound(level.begin(), level.end(), s,
                               [](const Simplex& a, std::span<const Vertex> b) { return lex_less(a, b); });
    if (it == level.end() || !std::equal(it->begin(), it->end(), s.begin(), s.end())) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
}

std::vector<std::size_t> Complex::f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& level : by_dim_) f.push_back(level.size());
    return f;
}

long Complex::euler_characteristic() const {
    long chi = 0;
    for (std::size_t p = 0; p < by_dim_.size(); ++p)
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[p].size());
    return chi;
}

std::vector<Simplex> Complex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int p = 0; p <= dimension(); ++p) {
        std::vector<bool> is_face(count(p), false);
        if (p < dimension()) {
            for (const auto& s : by_dim_[p + 1])
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (auto idx = index_of(drop(s, i))) is_face[*idx] = true;
        }
        for (std::size_t i = 0; i < count(p); ++i)
            if (!is_face[i]) out.push_back(by_dim_[p][i]);
    }
    return out;
}

long euler_characteristic(const Complex& c) { return c.euler_characteristic(); }

std::optional<ValidationError> validate_complex(const Complex& c) {
    using Kind = ValidationError::Kind;
    for (int p = 0; p <= c.dimension(); ++p) {
        const auto& level = c.simplices(p);
        for (std::size_t i = 0; i < level.size(); ++i) {
            const Simplex& s = level[i];
            for (Vertex v : s)
                if (v >= c.vertex_count()) return ValidationError{Kind::VertexOutOfRange, s, {}};
            if (std::adjacent_find(s.begin(), s.end()) != s.end()) return ValidationError{Kind::DegenerateSimplex, s, {}};
            if (i > 0 && level[i - 1] == s) return ValidationError{Kind::DuplicateSimplex, s, {}};
        }
    }
    for (Vertex v = 0; v < c.vertex_count(); ++v) {
        Simplex pt{v};
        if (!c.contains(pt)) return ValidationError{Kind::MissingFace, pt, pt};
    }
    for (int p = 1; p <= c.dimension(); ++p) {
        for (const Simplex& s : c.simplices(p)) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = drop(s, i);
                if (!c.contains(face)) return ValidationError{Kind::MissingFace, s, face};
            }
        }
    }
    return std::nullopt;
}

Simplex SimplicialMap::image(std::span<const Vertex> s) const {
    Simplex out;
    out.reserve(s.size());
    for (Vertex v : s) out.push_back(vertex_image.at(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::string> SimplicialMap::validate() const {
    if (!source || !target) return "map has no source or target";
    if (vertex_image.size() != source->vertex_count()) return "vertex image has wrong length";
    for (Vertex v : vertex_image)
        if (v >= target->vertex_count()) return "vertex image out of range";
    for (int p = 0; p <= source->dimension(); ++p)
        for (const auto& s : source->simplices(p))
            if (!target->contains(image(s))) return "image of " + format_simplex(s) + " is not a target simplex";
    return std::nullopt;
}

SimplicialMap SimplicialMap::identity(const ComplexPtr& c) {
    SimplicialMap m{c, c, {}};
    m.vertex_image.resize(c->vertex_count());
    for (Vertex v = 0; v < c->vertex_count(); ++v) m.vertex_image[v] = v;
    return m;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (f.target != g.source && !(f.target && g.source && *f.target == *g.source))
        throw Error(ErrorCode::InvalidMap, "compose: target of first map is not the source of the second");
    SimplicialMap h{f.source, g.target, {}};
    h.vertex_image.reserve(f.vertex_image.size());
    for (Vertex v : f.vertex_image) h.vertex_image.push_back(g.vertex_image.at(v));
    return h;
}

Subcomplex::Subcomplex(ComplexPtr parent, std::vector<std::vector<bool>> member)
    : parent_(std::move(parent)), member_(std::move(member)) {
    member_.resize(std::max<std::size_t>(member_.size(), static_cast<std::size_t>(parent_->dimension() + 1)));
    for (int p = 0; p <= parent_->dimension(); ++p) member_[p].resize(parent_->count(p), false);

    std::vector<long> relabel(parent_->vertex_count(), -1);
    std::vector<Vertex> image;
    for (std::size_t i = 0; i < parent_->count(0); ++i) {
        if (!member_[0][i]) continue;
        Vertex v = parent_->simplex(0, i)[0];
        relabel[v] = static_cast<long>(image.size());
        image.push_back(v);
    }
    std::vector<Simplex> simplices;
    for (int p = 0; p <= parent_->dimension(); ++p) {
        for (std::size_t i = 0; i < parent_->count(p); ++i) {
            if (!member_[p][i]) continue;
            Simplex s;
            for (Vertex v : parent_->simplex(p, i)) {
                if (relabel[v] < 0) throw Error(ErrorCode::NotFaceClosed, "selection is not closed under faces");
                s.push_back(static_cast<Vertex>(relabel[v]));
            }
            simplices.push_back(std::move(s));
        }
    }
    auto z = std::make_shared<Complex>(image.size(), std::move(simplices));
    if (auto err = validate_complex(*z)) throw Error(ErrorCode::NotFaceClosed, err->message());
    complex_ = z;
    inclusion_ = SimplicialMap{complex_, parent_, image};

    // Relabeling is order preserving, so the p-simplices of Z appear in the
    // same relative order as in the parent.
    parent_index_.resize(static_cast<std::size_t>(complex_->dimension() + 1));
    for (int p = 0; p <= complex_->dimension(); ++p)
        for (std::size_t i = 0; i < parent_->count(p); ++i)
            if (member_[p][i]) parent_index_[p].push_back(i);
}

bool Subcomplex::empty() const noexcept { return complex_->count(0) == 0; }

std::size_t Subcomplex::count(int p) const { return complex_->count(p); }

namespace {

std::vector<std::vector<bool>> close_selection(const ComplexPtr& c, std::vector<std::vector<bool>> member, SelectMode mode) {
    for (int p = c->dimension(); p >= 1; --p) {
        for (std::size_t i = 0; i < c->count(p); ++i) {
            if (!member[p][i]) continue;
            const Simplex& s = c->simplex(p, i);
            for (std::size_t k = 0; k < s.size(); ++k) {
                std::size_t f = *c->index_of(drop(s, k));
                if (!member[p - 1][f]) {
                    if (mode == SelectMode::Strict)
                        throw Error(ErrorCode::NotFaceClosed,
                                    "face " + format_simplex(drop(s, k)) + " of selected " + format_simplex(s) + " is not selected");
                    member[p - 1][f] = true;
                }
            }
        }
    }
    return member;
}

std::vector<std::vector<bool>> empty_membership(const ComplexPtr& c) {
    std::vector<std::vector<bool>> member(static_cast<std::size_t>(c->dimension() + 1));
    for (int p = 0; p <= c->dimension(); ++p) member[p].assign(c->count(p), false);
    return member;
}

} // namespace

Subcomplex subcomplex(const ComplexPtr& c, const std::vector<Simplex>& selection, SelectMode mode) {
    auto member = empty_membership(c);
    for (Simplex s : selection) {
        std::sort(s.begin(), s.end());
        auto idx = c->index_of(s);
        if (!idx) throw Error(ErrorCode::InvalidComplex, "selected simplex " + format_simplex(s) + " is not in the complex");
        member[s.size() - 1][*idx] = true;
    }
    return Subcomplex(c, close_selection(c, std::move(member), mode));
}

Subcomplex subcomplex(const ComplexPtr& c, const std::function<bool(const Simplex&)>& selector, SelectMode mode) {
    auto member = empty_membership(c);
    for (int p = 0; p <= c->dimension(); ++p)
        for (std::size_t i = 0; i < c->count(p); ++i) member[p][i] = selector(c->simplex(p, i));
    return Subcomplex(c, close_selection(c, std::move(member), mode));
}

Product product(const ComplexPtr& a, const ComplexPtr& b) {
    const std::size_t nb = b->vertex_count();
    std::vector<Simplex> simplices;
    Simplex path;
    // Monotone lattice paths from (0,0) to (p,q) with steps (1,0), (0,1), (1,1)
    // enumerate the simplices of sigma x tau that project onto both factors.
    std::function<void(const Simplex&, const Simplex&, std::size_t, std::size_t)> walk =
        [&](const Simplex& s, const Simplex& t, std::size_t i, std::size_t j) {
            path.push_back(static_cast<Vertex>(s[i] * nb + t[j]));
            if (i + 1 == s.size() && j + 1 == t.size()) {
                simplices.push_back(path);
            } else {
                if (i + 1 < s.size()) walk(s, t, i + 1, j);
                if (j + 1 < t.size()) walk(s, t, i, j + 1);
                if (i + 1 < s.size() && j + 1 < t.size()) walk(s, t, i + 1, j + 1);
            }
            path.pop_back();
        };
    for (int p = 0; p <= a->dimension(); ++p)
        for (const auto& s : a->simplices(p))
            for (int q = 0; q <= b->dimension(); ++q)
                for (const auto& t : b->simplices(q)) walk(s, t, 0, 0);

    std::string name;
    if (!a->name().empty() && !b->name().empty()) name = a->name() + " x " + b->name();
    auto prod = std::make_shared<Complex>(a->vertex_count() * nb, std::move(simplices));
    prod->set_name(name);

    Product out{prod, {prod, a, {}}, {prod, b, {}}};
    out.pr1.vertex_image.resize(prod->vertex_count());
    out.pr2.vertex_image.resize(prod->vertex_count());
    for (Vertex v = 0; v < prod->vertex_count(); ++v) {
        out.pr1.vertex_image[v] = static_cast<Vertex>(v / nb);
        out.pr2.vertex_image[v] = static_cast<Vertex>(v % nb);
    }
    return out;
}

} // namespace novikov
