#include "novikov/models.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "novikov/cohomology.hpp"
#include "novikov/error.hpp"
#include "novikov/linalg.hpp"

namespace novikov {

namespace detail {
extern const std::string_view cp2_asset_text;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::BadParams, what);
}

std::vector<Simplex> all_subsets(const Simplex& s, std::size_t size) {
    std::vector<Simplex> out;
    std::vector<bool> pick(s.size(), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
        Simplex t;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (pick[i]) t.push_back(s[i]);
        out.push_back(std::move(t));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// The 7-vertex (Moebius) torus.
std::vector<Simplex> torus7_facets() {
    std::vector<Simplex> f;
    for (Vertex i = 0; i < 7; ++i) {
        f.push_back({i, (i + 1) % 7, (i + 3) % 7});
        f.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    for (auto& s : f) std::sort(s.begin(), s.end());
    return f;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ComplexPtr load_cp2() {
    std::istringstream in{std::string(detail::cp2_asset_text)};
    std::string line;
    long declared = -1;
    std::string declared_sum;
    std::uint64_t sum = 0xcbf29ce484222325ULL;
    std::vector<Simplex> facets;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# facets:", 0) == 0) declared = std::stol(line.substr(9));
            if (line.rfind("# checksum: fnv1a64 ", 0) == 0) declared_sum = line.substr(20);
            continue;
        }
        sum = fnv1a(line + "\n", sum);
        std::istringstream ls(line);
        Simplex s;
        long v;
        while (ls >> v) {
            if (v < 0 || v > 8) throw Error(ErrorCode::DescriptorMismatch, "cp2 asset: vertex out of range in '" + line + "'");
            s.push_back(static_cast<Vertex>(v));
        }
        if (s.size() != 5) throw Error(ErrorCode::DescriptorMismatch, "cp2 asset: facet '" + line + "' is not a 4-simplex");
        facets.push_back(std::move(s));
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(sum));
    if (declared != static_cast<long>(facets.size()))
        throw Error(ErrorCode::DescriptorMismatch, "cp2 asset: facet count does not match header");
    if (declared_sum != hex) throw Error(ErrorCode::DescriptorMismatch, "cp2 asset: checksum mismatch (got " + std::string(hex) + ")");
    return Complex::closure(9, facets, "cp2");
}

// Every (d-1)-simplex lies in exactly two d-simplices.
bool closed_pseudomanifold(const Complex& c) {
    int d = c.dimension();
    if (d < 1) return false;
    std::vector<int> cofaces(c.count(d - 1), 0);
    for (const auto& s : c.simplices(d))
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<long>(i));
            ++cofaces[*c.index_of(f)];
        }
    return std::all_of(cofaces.begin(), cofaces.end(), [](int n) { return n == 2; });
}

// Untwisted boundary of a p-chain.
SparseVector boundary(const Complex& c, int p, const SparseVector& chain) {
    std::vector<Entry> out;
    for (const auto& e : chain) {
        const Simplex& s = c.simplex(p, e.index);
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<long>(i));
            out.push_back({static_cast<Index>(*c.index_of(f)), i % 2 ? -e.value : e.value});
        }
    }
    return SparseVector(std::move(out));
}

SparseVector chain_of(const Complex& c, const std::vector<std::pair<Simplex, long>>& terms) {
    std::vector<Entry> e;
    for (const auto& [s, coeff] : terms) {
        auto idx = c.index_of(s);
        if (!idx) throw Error(ErrorCode::DescriptorMismatch, "chain simplex not in complex");
        e.push_back({static_cast<Index>(*idx), Rational(coeff)});
    }
    return SparseVector(std::move(e));
}

// Generator h of H^2 with <h, cycle> = 1, from the engine's representatives.
SparseVector normalized_h(const ComplexPtr& c, const SparseVector& cycle) {
    TwistedCohomology tc(c, LocalSystem::trivial(c));
    const auto& reps = tc.groups().representatives(2);
    if (reps.size() != 1) throw Error(ErrorCode::DescriptorMismatch, c->name() + ": H^2 is not one-dimensional");
    Rational pr = pairing(reps[0], cycle);
    if (pr.is_zero()) throw Error(ErrorCode::DescriptorMismatch, c->name() + ": degree-2 generator pairs to zero with the 2-cycle");
    return reps[0].scaled(pr.inverse());
}

void validate_model(const Model& m) {
    const Complex& c = *m.complex;
    const auto& d = m.descriptor;
    auto fail = [&](const std::string& what) { throw Error(ErrorCode::DescriptorMismatch, d.name + ": " + what); };
    if (auto err = validate_complex(c)) fail(err->message());
    if (c.f_vector() != d.expected_f_vector) fail("f-vector mismatch");
    if (c.euler_characteristic() != d.expected_euler) fail("Euler characteristic mismatch");
    TwistedCohomology tc(m.complex, LocalSystem::trivial(m.complex), {false, true});
    if (tc.groups().betti() != d.untwisted_betti) fail("untwisted Betti numbers mismatch");
    if (!d.fundamental_cycle.empty() && !boundary(c, c.dimension(), d.fundamental_cycle).empty())
        fail("fundamental cycle is not closed");
    if (d.h_generator) {
        const SparseVector& h = *d.h_generator;
        if (!tc.groups().is_cocycle(2, h)) fail("h is not a cocycle");
        if (!boundary(c, 2, d.h_cycle).empty()) fail("h cycle is not closed");
        if (pairing(h, d.h_cycle) != Rational(1)) fail("h does not pair to +1 with its cycle");
        if (c.dimension() >= 4) {
            LocalSystem triv = LocalSystem::trivial(m.complex);
            SparseVector hh = cup(2, h, 2, h, triv);
            if (tc.groups().is_coboundary(4, hh)) fail("h u h is a coboundary");
        }
    }
}

std::vector<std::size_t> simplex_f(std::size_t vertices, int top) {
    std::vector<std::size_t> f;
    for (int k = 0; k <= top; ++k) f.push_back(binomial(vertices, static_cast<std::size_t>(k) + 1));
    return f;
}

long alternating(const std::vector<std::size_t>& v) {
    long s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i % 2 ? -1 : 1) * static_cast<long>(v[i]);
    return s;
}

} // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"point", "", "a single vertex", {}},
        {"simplex", "n", "the full n-simplex", {2}},
        {"sphere", "n", "boundary of the (n+1)-simplex", {2}},
        {"circle", "m", "m-gon, m >= 3", {3}},
        {"torus_2d", "", "circle(3) x circle(3)", {}},
        {"surface", "g", "closed orientable surface of genus g", {2}},
        {"cp1", "", "sphere(2) with its degree-2 generator", {}},
        {"cp2", "", "9-vertex complex projective plane", {}},
        {"blowup_cp2_standin", "", "sphere(2) x sphere(2)", {}},
    };
    return entries;
}

ComplexPtr point() { return Complex::make(1, {{0}}, "point"); }

ComplexPtr simplex(int n) {
    require(n >= 0, "simplex dimension must be nonnegative");
    Simplex s(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) s[i] = static_cast<Vertex>(i);
    return Complex::closure(s.size(), {s}, "simplex(" + std::to_string(n) + ")");
}

ComplexPtr sphere(int n) {
    require(n >= 0, "sphere dimension must be nonnegative");
    Simplex s(static_cast<std::size_t>(n) + 2);
    for (int i = 0; i <= n + 1; ++i) s[i] = static_cast<Vertex>(i);
    return Complex::closure(s.size(), all_subsets(s, s.size() - 1), "sphere(" + std::to_string(n) + ")");
}

ComplexPtr circle(int m) {
    require(m >= 3, "circle needs at least 3 vertices");
    std::vector<Simplex> edges;
    for (int i = 0; i < m; ++i) {
        Vertex a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % m);
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return Complex::closure(static_cast<std::size_t>(m), edges, "circle(" + std::to_string(m) + ")");
}

ComplexPtr torus_2d() {
    auto c = product(circle(3), circle(3)).complex;
    auto out = std::make_shared<Complex>(*c);
    out->set_name("torus_2d");
    return out;
}

ComplexPtr surface(int g) {
    require(g >= 0, "genus must be nonnegative");
    if (g == 0) {
        auto out = std::make_shared<Complex>(*sphere(2));
        out->set_name("surface(0)");
        return out;
    }
    const auto base = torus7_facets();
    const Simplex hole_in{0, 1, 3};   // glued to the previous copy
    const Simplex hole_out{2, 4, 5};  // glued to the next copy
    std::vector<Simplex> facets;
    std::vector<Vertex> prev_map;
    Vertex next_free = 0;
    for (int k = 0; k < g; ++k) {
        std::vector<Vertex> map(7);
        if (k == 0) {
            for (Vertex v = 0; v < 7; ++v) map[v] = next_free++;
        } else {
            for (std::size_t i = 0; i < 3; ++i) map[hole_in[i]] = prev_map[hole_out[i]];
            for (Vertex v : {2u, 4u, 5u, 6u}) map[v] = next_free++;
        }
        for (const auto& f : base) {
            if (k > 0 && f == hole_in) continue;
            if (k + 1 < g && f == hole_out) continue;
            Simplex s{map[f[0]], map[f[1]], map[f[2]]};
            std::sort(s.begin(), s.end());
            facets.push_back(std::move(s));
        }
        prev_map = map;
    }
    return Complex::closure(next_free, facets, "surface(" + std::to_string(g) + ")");
}

ComplexPtr cp1() {
    auto out = std::make_shared<Complex>(*sphere(2));
    out->set_name("cp1");
    return out;
}

ComplexPtr cp2() {
    auto c = load_cp2();
    if (!closed_pseudomanifold(*c)) throw Error(ErrorCode::DescriptorMismatch, "cp2 asset is not a closed pseudomanifold");
    return c;
}

ComplexPtr blowup_cp2_standin() {
    auto c = product(sphere(2), sphere(2)).complex;
    auto out = std::make_shared<Complex>(*c);
    out->set_name("blowup_cp2_standin");
    return out;
}

SparseVector fundamental_cycle(const Complex& c) {
    int d = c.dimension();
    if (d < 1) return {};
    std::vector<SparseVector> cols;
    for (std::size_t i = 0; i < c.count(d); ++i) cols.push_back(boundary(c, d, SparseVector::unit(static_cast<Index>(i))));
    auto ker = kernel_basis(SparseMatrix(c.count(d - 1), std::move(cols)));
    if (ker.size() != 1) return {};
    SparseVector z = ker[0];
    return z.scaled(z.begin()->value.inverse());
}

Model projective_space(int m) {
    if (m == 1) return build_model("cp1");
    if (m == 2) return build_model("cp2");
    throw Error(ErrorCode::BadParams, "only CP^1 and CP^2 are in the catalog");
}

Model build_model(std::string_view name, const std::vector<long>& params) {
    auto entry = std::find_if(catalog().begin(), catalog().end(), [&](const CatalogEntry& e) { return e.name == name; });
    if (entry == catalog().end()) throw Error(ErrorCode::UnknownModel, "unknown model '" + std::string(name) + "'");
    std::vector<long> p = params.empty() ? entry->default_parameters : params;
    std::size_t want = entry->parameters.empty() ? 0 : 1;
    if (p.size() != want) throw Error(ErrorCode::BadParams, entry->name + " takes " + std::to_string(want) + " parameter(s)");
    auto small = [&](long lo, long hi) {
        if (p[0] < lo || p[0] > hi)
            throw Error(ErrorCode::BadParams, entry->name + " parameter must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(p[0]);
    };

    Model m;
    ModelDescriptor& d = m.descriptor;
    d.name = entry->name;
    d.parameters = p;
    if (name == "point") {
        m.complex = point();
        d.expected_f_vector = {1};
        d.untwisted_betti = {1};
    } else if (name == "simplex") {
        int n = small(0, 12);
        m.complex = simplex(n);
        d.expected_f_vector = simplex_f(n + 1, n);
        d.untwisted_betti.assign(n + 1, 0);
        d.untwisted_betti[0] = 1;
    } else if (name == "sphere") {
        int n = small(0, 10);
        m.complex = sphere(n);
        d.expected_f_vector = simplex_f(n + 2, n);
        d.untwisted_betti.assign(n + 1, 0);
        d.untwisted_betti[0] += 1;
        d.untwisted_betti[n] += 1;
    } else if (name == "circle") {
        int k = small(3, 100000);
        m.complex = circle(k);
        d.expected_f_vector = {std::size_t(k), std::size_t(k)};
        d.untwisted_betti = {1, 1};
    } else if (name == "torus_2d") {
        m.complex = torus_2d();
        d.expected_f_vector = {9, 27, 18};
        d.untwisted_betti = {1, 2, 1};
    } else if (name == "surface") {
        int g = small(0, 1000);
        m.complex = surface(g);
        if (g == 0) d.expected_f_vector = {4, 6, 4};
        else d.expected_f_vector = {7 + 4 * std::size_t(g - 1), 21 + 18 * std::size_t(g - 1), 14 + 12 * std::size_t(g - 1)};
        d.untwisted_betti = {1, 2 * std::size_t(g), 1};
    } else if (name == "cp1") {
        m.complex = cp1();
        d.expected_f_vector = {4, 6, 4};
        d.untwisted_betti = {1, 0, 1};
        // oriented boundary of [0123]
        d.h_cycle = chain_of(*m.complex, {{{1, 2, 3}, 1}, {{0, 2, 3}, -1}, {{0, 1, 3}, 1}, {{0, 1, 2}, -1}});
        d.h_generator = normalized_h(m.complex, d.h_cycle);
    } else if (name == "cp2") {
        m.complex = cp2();
        d.expected_f_vector = {9, 36, 84, 90, 36};
        d.untwisted_betti = {1, 0, 1, 0, 1};
        // the embedded CP^1: oriented boundary of the empty tetrahedron [0125]
        d.h_cycle = chain_of(*m.complex, {{{1, 2, 5}, 1}, {{0, 2, 5}, -1}, {{0, 1, 5}, 1}, {{0, 1, 2}, -1}});
        d.h_generator = normalized_h(m.complex, d.h_cycle);
    } else if (name == "blowup_cp2_standin") {
        m.complex = blowup_cp2_standin();
        d.expected_f_vector = {16, 84, 216, 240, 96};
        d.untwisted_betti = {1, 0, 2, 0, 1};
    }
    d.expected_euler = alternating(d.untwisted_betti);
    if (d.untwisted_betti.size() >= 2 && d.untwisted_betti.back() == 1 && closed_pseudomanifold(*m.complex))
        d.fundamental_cycle = fundamental_cycle(*m.complex);
    validate_model(m);
    return m;
}

SimplicialMap circle_cover(int m, int k) {
    require(m >= 3 && k >= 1, "circle cover needs m >= 3 and k >= 1");
    SimplicialMap f{circle(m * k), circle(m), {}};
    for (int v = 0; v < m * k; ++v) f.vertex_image.push_back(static_cast<Vertex>(v % m));
    if (auto err = f.validate()) throw Error(ErrorCode::InvalidMap, *err);
    return f;
}

namespace {

struct Forest {
    std::vector<bool> tree_edge;
    std::vector<long> parent;  // vertex -> parent vertex, -1 for roots
};

Forest bfs_forest(const Complex& c) {
    const std::size_t n = c.vertex_count();
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n);
    for (std::size_t i = 0; i < c.count(1); ++i) {
        const Simplex& e = c.simplex(1, i);
        adj[e[0]].push_back({e[1], i});
        adj[e[1]].push_back({e[0], i});
    }
    Forest f{std::vector<bool>(c.count(1), false), std::vector<long>(n, -1)};
    std::vector<bool> seen(n, false);
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::deque<Vertex> queue{root};
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            for (auto [v, ei] : adj[u]) {
                if (seen[v]) continue;
                seen[v] = true;
                f.parent[v] = u;
                f.tree_edge[ei] = true;
                queue.push_back(v);
            }
        }
    }
    return f;
}

// Non-tree edges and the RREF kernel of the log-space triangle constraints:
// kernel[i] is 1 on free edge free_edges[i] and 0 on the other free edges.
struct LogSolution {
    std::vector<std::size_t> non_tree;   // column -> edge index
    std::vector<std::size_t> free_edges; // one per independent loop
    std::vector<SparseVector> kernel;    // over columns
    Forest forest;
};

LogSolution solve_log_constraints(const Complex& c) {
    LogSolution out;
    out.forest = bfs_forest(c);
    std::vector<long> column(c.count(1), -1);
    for (std::size_t i = 0; i < c.count(1); ++i)
        if (!out.forest.tree_edge[i]) {
            column[i] = static_cast<long>(out.non_tree.size());
            out.non_tree.push_back(i);
        }
    std::vector<std::vector<Entry>> cols(out.non_tree.size());
    for (std::size_t r = 0; r < c.count(2); ++r) {
        const Simplex& t = c.simplex(2, r);
        Simplex uv{t[0], t[1]}, vw{t[1], t[2]}, uw{t[0], t[2]};
        for (auto [e, sign] : {std::pair{uw, 1}, std::pair{uv, -1}, std::pair{vw, -1}}) {
            long col = column[*c.index_of(e)];
            if (col >= 0) cols[col].push_back({static_cast<Index>(r), Rational(sign)});
        }
    }
    std::vector<SparseVector> sc;
    for (auto& v : cols) sc.emplace_back(std::move(v));
    out.kernel = kernel_basis(SparseMatrix(c.count(2), std::move(sc)));
    for (const auto& k : out.kernel) {
        // the free column is the largest index in the tracked combination
        out.free_edges.push_back(out.non_tree[k.back().index]);
    }
    return out;
}

std::vector<Vertex> path_to_root(const Forest& f, Vertex v) {
    std::vector<Vertex> p{v};
    while (f.parent[p.back()] >= 0) p.push_back(static_cast<Vertex>(f.parent[p.back()]));
    return p;
}

} // namespace

std::vector<std::vector<Vertex>> loop_basis(const ComplexPtr& c) {
    auto sol = solve_log_constraints(*c);
    std::vector<std::vector<Vertex>> loops;
    for (std::size_t e : sol.free_edges) {
        const Simplex& uv = c->simplex(1, e);
        auto pu = path_to_root(sol.forest, uv[0]);
        auto pv = path_to_root(sol.forest, uv[1]);
        // trim the common tail to get a simple cycle u -> ... -> lca -> ... -> v -> u
        while (pu.size() >= 2 && pv.size() >= 2 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
        }
        std::vector<Vertex> loop(pu.begin(), pu.end());  // u .. lca
        for (std::size_t i = pv.size() - 1; i-- > 0;) loop.push_back(pv[i]);  // .. v
        loop.push_back(uv[0]);
        // loop runs u -> lca -> v -> u; reverse so the non-tree edge is traversed u <- v first
        std::reverse(loop.begin(), loop.end());
        loops.push_back(std::move(loop));
    }
    return loops;
}

LocalSystem generic_system(const ComplexPtr& c, const std::vector<Rational>& weights) {
    for (const auto& w : weights)
        if (w.sign() <= 0) throw Error(ErrorCode::InvalidSystem, "loop weights must be positive");
    auto sol = solve_log_constraints(*c);
    if (weights.size() > sol.kernel.size())
        throw Error(ErrorCode::NotEnoughIndependentLoops, std::to_string(weights.size()) + " weights requested but only " +
                                                              std::to_string(sol.kernel.size()) + " independent loops");
    std::vector<Rational> t(c->count(1), Rational(1));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].is_one()) continue;
        for (const auto& e : sol.kernel[i]) {
            mpz_class den = e.value.denominator();
            mpz_class num = e.value.numerator();
            if (den != 1 || !num.fits_slong_p())
                throw Error(ErrorCode::InvalidSystem, "loop basis is not integral (torsion in H_1?)");
            t[sol.non_tree[e.index]] *= weights[i].pow(num.get_si());
        }
    }
    LocalSystem s(c, std::move(t));
    if (auto v = validate_system(s)) throw std::logic_error("generic_system produced an invalid system: " + v->message());
    return s;
}

Subcomplex wedge_of_circles(const ComplexPtr& c, int count) {
    require(count >= 1, "wedge needs at least one circle");
    TwistedCohomology x(c, LocalSystem::trivial(c));
    const std::size_t n = c->vertex_count();
    std::vector<std::set<Vertex>> nbr(n);
    for (const auto& e : c->simplices(1)) {
        nbr[e[0]].insert(e[1]);
        nbr[e[1]].insert(e[0]);
    }
    auto edge = [](Vertex a, Vertex b) { return Simplex{std::min(a, b), std::max(a, b)}; };

    for (Vertex v0 = 0; v0 < n; ++v0) {
        // candidate cycles through v0: triangles and squares in the 1-skeleton
        std::vector<std::vector<Vertex>> cands;
        for (Vertex a : nbr[v0])
            for (Vertex b : nbr[a])
                if (b > a && b != v0 && nbr[v0].count(b)) cands.push_back({v0, a, b});
        for (Vertex a : nbr[v0])
            for (Vertex b : nbr[a])
                for (Vertex d : nbr[b])
                    if (b != v0 && d != v0 && d != a && d > a && nbr[v0].count(d) && !nbr[v0].count(b)) cands.push_back({v0, a, b, d});

        std::vector<std::vector<Vertex>> chosen;
        std::set<Vertex> used{v0};
        for (const auto& cyc : cands) {
            if (std::any_of(cyc.begin() + 1, cyc.end(), [&](Vertex v) { return used.count(v) > 0; })) continue;
            auto trial = chosen;
            trial.push_back(cyc);
            std::vector<Simplex> sel;
            for (const auto& cy : trial)
                for (std::size_t i = 0; i < cy.size(); ++i) sel.push_back(edge(cy[i], cy[(i + 1) % cy.size()]));
            Subcomplex z = subcomplex(c, sel, SelectMode::CloseFaces);
            TwistedCohomology zc(z.complex(), LocalSystem::trivial(z.complex()));
            auto maps = pullback_on_cohomology(z.inclusion(), x, zc);
            if (maps.size() < 2 || rank(maps[1]) != trial.size()) continue;
            chosen = std::move(trial);
            for (Vertex v : cyc) used.insert(v);
            if (static_cast<int>(chosen.size()) == count) return z;
        }
    }
    throw Error(ErrorCode::BadParams, "no wedge of " + std::to_string(count) + " essential circles found");
}

Subcomplex cp1_in_cp2(const ComplexPtr& cp2_complex) {
    return subcomplex(cp2_complex, std::vector<Simplex>{{1, 2, 5}, {0, 2, 5}, {0, 1, 5}, {0, 1, 2}}, SelectMode::CloseFaces);
}

Subcomplex product_slice(const Product& prod, int factor, Vertex v) {
    require(factor == 1 || factor == 2, "factor must be 1 or 2");
    const SimplicialMap& other = factor == 1 ? prod.pr2 : prod.pr1;
    return subcomplex(
        prod.complex,
        [&](const Simplex& s) { return std::all_of(s.begin(), s.end(), [&](Vertex u) { return other.vertex_image[u] == v; }); },
        SelectMode::Strict);
}

} // namespace novikov
