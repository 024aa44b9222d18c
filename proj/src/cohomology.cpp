#include "novikov/cohomology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "novikov/error.hpp"
#include "novikov/parallel.hpp"

namespace novikov {

namespace {

// Coboundary of a p-cochain where the leading-face coefficient of a (p+1)-simplex
// is lead(tau).
template <class Lead>
SparseVector coboundary_impl(const Complex& c, int p, const SparseVector& f, Lead lead) {
    if (p < 0) throw std::out_of_range("coboundary: negative degree");
    if (!f.empty() && f.back().index >= c.count(p)) throw Error(ErrorCode::DimensionMismatch, "cochain longer than C^" + std::to_string(p));
    std::vector<Entry> out;
    if (f.empty() || p + 1 > c.dimension()) return {};
    const auto& cells = c.simplices(p + 1);
    Simplex face(p + 1);
    for (std::size_t r = 0; r < cells.size(); ++r) {
        const Simplex& tau = cells[r];
        Rational acc;
        for (int i = 0; i <= p + 1; ++i) {
            std::copy(tau.begin(), tau.begin() + i, face.begin());
            std::copy(tau.begin() + i + 1, tau.end(), face.begin() + i);
            auto idx = c.index_of(face);
            Rational v = f.at(static_cast<Index>(*idx));
            if (v.is_zero()) continue;
            if (i == 0) acc += lead(tau) * v;
            else if (i % 2) acc -= v;
            else acc += v;
        }
        if (!acc.is_zero()) out.push_back({static_cast<Index>(r), std::move(acc)});
    }
    return SparseVector(std::move(out));
}

SparseVector untwisted_coboundary(const Complex& c, int p, const SparseVector& f) {
    return coboundary_impl(c, p, f, [](const Simplex&) { return Rational(1); });
}

void require_valid(const LocalSystem& s) {
    if (!s.base()) throw Error(ErrorCode::InvalidSystem, "local system without base complex");
    if (auto v = validate_system(s)) throw Error(ErrorCode::InvalidSystem, v->message());
}

} // namespace

TwistedComplex coboundary_matrices(const ComplexPtr& c, const LocalSystem& s) {
    if (!c || !s.base() || !(s.base() == c || *s.base() == *c))
        throw Error(ErrorCode::InvalidSystem, "local system is defined on a different complex");
    require_valid(s);

    const int top = c->dimension();
    TwistedComplex out{c, s, {}};
    out.delta.resize(top < 0 ? 0 : static_cast<std::size_t>(top) + 1);

    parallel_for(out.delta.size(), [&](std::size_t pp) {
        const int p = static_cast<int>(pp);
        std::vector<SparseVector> cols(c->count(p));
        if (p < top) {
            const auto& cells = c->simplices(p + 1);
            Simplex face(p + 1);
            for (std::size_t r = 0; r < cells.size(); ++r) {
                const Simplex& tau = cells[r];
                for (int i = 0; i <= p + 1; ++i) {
                    std::copy(tau.begin(), tau.begin() + i, face.begin());
                    std::copy(tau.begin() + i + 1, tau.end(), face.begin() + i);
                    std::size_t j = *c->index_of(face);
                    Rational v = i == 0 ? s.weight(tau[0], tau[1]) : Rational(i % 2 ? -1 : 1);
                    cols[j].push_back(static_cast<Index>(r), std::move(v));
                }
            }
        }
        out.delta[pp] = SparseMatrix(p < top ? c->count(p + 1) : 0, std::move(cols));
    });

    // delta^2 = 0, checked exactly
    if (out.delta.size() >= 2) {
        parallel_for(out.delta.size() - 1, [&](std::size_t p) {
            const SparseMatrix& d0 = out.delta[p];
            const SparseMatrix& d1 = out.delta[p + 1];
            for (std::size_t j = 0; j < d0.cols(); ++j) {
                if (!d1.apply(d0.column(j)).empty())
                    throw Error(ErrorCode::InvalidSystem,
                                "twisted coboundary does not square to zero in degree " + std::to_string(p));
            }
        });
    }
    return out;
}

SparseVector apply_coboundary(const LocalSystem& s, int p, const SparseVector& cochain) {
    return coboundary_impl(*s.base(), p, cochain, [&](const Simplex& tau) { return s.weight(tau[0], tau[1]); });
}

// ---------------------------------------------------------------------------

CochainCohomology::CochainCohomology(std::vector<std::size_t> dims, std::vector<SparseMatrix> delta, CohomologyOptions options)
    : dims_(std::move(dims)), owned_(std::move(delta)), delta_(owned_), options_(options) {
    compute();
}

CochainCohomology::CochainCohomology(Borrow, std::vector<std::size_t> dims, std::span<const SparseMatrix> delta,
                                     CohomologyOptions options)
    : dims_(std::move(dims)), delta_(delta), options_(options) {
    compute();
}

void CochainCohomology::compute() {
    const std::size_t n = dims_.size();
    if (delta_.size() > n) throw Error(ErrorCode::DimensionMismatch, "more coboundary maps than cochain groups");
    for (std::size_t p = 0; p < delta_.size(); ++p) {
        std::size_t rows = p + 1 < n ? dims_[p + 1] : 0;
        if (delta_[p].cols() != dims_[p] || delta_[p].rows() != rows)
            throw Error(ErrorCode::DimensionMismatch, "coboundary " + std::to_string(p) + " has shape " +
                                                          std::to_string(delta_[p].rows()) + "x" + std::to_string(delta_[p].cols()));
    }

    betti_.assign(n, 0);
    ranks_.assign(n, 0);
    image_.clear();
    image_.resize(n);
    reps_.assign(n, {});
    rep_basis_.clear();
    rep_basis_.resize(n);

    const SparseVector zero;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t rows = p + 1 < n ? dims_[p + 1] : 0;
        auto reducer = std::make_unique<ColumnReducer>(rows, options_.representatives);
        const ColumnReducer* cleared = image_[p].get();
        std::size_t essential = 0;
        for (std::size_t j = 0; j < dims_[p]; ++j) {
            if (cleared && cleared->is_pivot_row(static_cast<Index>(j))) continue;
            const SparseVector& col = p < delta_.size() ? delta_[p].column(j) : zero;
            auto outcome = reducer->add(col, static_cast<Index>(j));
            if (outcome.pivot) continue;
            ++essential;
            if (options_.representatives) reps_[p].push_back(std::move(outcome.combination));
        }
        ranks_[p] = reducer->rank();
        betti_[p] = essential;
        if (p > 0 && dims_[p] != betti_[p] + ranks_[p] + ranks_[p - 1])
            throw std::logic_error("cohomology: rank bookkeeping mismatch");
        reducer->drop_tracking();
        // images are still needed to verify representatives
        if (!options_.keep_image && !options_.representatives) image_[p].reset();
        if (p + 1 < n) image_[p + 1] = std::move(reducer);
    }

    if (options_.representatives) {
        for (std::size_t p = 0; p < n; ++p) {
            auto basis = std::make_unique<ColumnReducer>(dims_[p], true);
            for (std::size_t i = 0; i < reps_[p].size(); ++i) {
                if (!apply(static_cast<int>(p), reps_[p][i]).empty())
                    throw std::logic_error("cohomology: representative is not a cocycle");
                if (!basis->add(reduce_mod_image(static_cast<int>(p), reps_[p][i]), static_cast<Index>(i)).pivot)
                    throw std::logic_error("cohomology: representatives are dependent modulo the image");
            }
            rep_basis_[p] = std::move(basis);
        }
    }
    if (!options_.keep_image)
        for (auto& im : image_) im.reset();
}

const std::vector<SparseVector>& CochainCohomology::representatives(int p) const {
    if (!options_.representatives) throw std::logic_error("cohomology computed without representatives");
    if (p < 0 || p > top_degree()) {
        static const std::vector<SparseVector> none;
        return none;
    }
    return reps_[p];
}

SparseVector CochainCohomology::apply(int p, const SparseVector& cochain) const {
    if (p < 0 || p > top_degree()) throw std::out_of_range("cohomology: degree out of range");
    if (!cochain.empty() && cochain.back().index >= dims_[p])
        throw Error(ErrorCode::DimensionMismatch, "cochain longer than C^" + std::to_string(p));
    if (static_cast<std::size_t>(p) >= delta_.size()) return {};
    return delta_[p].apply(cochain);
}

SparseVector CochainCohomology::reduce_mod_image(int p, const SparseVector& cochain) const {
    if (p < 0 || p > top_degree()) throw std::out_of_range("cohomology: degree out of range");
    if (p == 0) return cochain;
    if (!image_[p]) throw std::logic_error("cohomology computed without keeping images");
    return image_[p]->reduce(cochain).remainder;
}

bool CochainCohomology::is_coboundary(int p, const SparseVector& cochain) const {
    return reduce_mod_image(p, cochain).empty();
}

std::vector<Rational> CochainCohomology::coordinates(int p, const SparseVector& cocycle) const {
    if (!is_cocycle(p, cocycle)) throw Error(ErrorCode::NotACocycle, "cochain in degree " + std::to_string(p) + " is not closed");
    if (!options_.representatives) throw std::logic_error("cohomology computed without representatives");
    auto red = rep_basis_[p]->reduce(reduce_mod_image(p, cocycle));
    if (!red.remainder.empty()) throw std::logic_error("cohomology: representatives do not span");
    std::vector<Rational> coords(betti_[p]);
    for (const auto& e : red.combination) coords[e.index] = e.value;
    return coords;
}

// ---------------------------------------------------------------------------

TwistedCohomology::TwistedCohomology(const ComplexPtr& c, const LocalSystem& s, CohomologyOptions options)
    : complex_(coboundary_matrices(c, s)) {
    std::vector<std::size_t> dims;
    for (int p = 0; p <= c->dimension(); ++p) dims.push_back(c->count(p));
    groups_.reset(new CochainCohomology(CochainCohomology::Borrow{}, std::move(dims), complex_.delta, options));
}

CohomologyReport TwistedCohomology::report() const {
    CohomologyReport r;
    r.betti = groups_->betti();
    if (groups_->options().representatives)
        for (int p = 0; p <= groups_->top_degree(); ++p) r.representatives.push_back(groups_->representatives(p));
    r.system_fingerprint = complex_.system.fingerprint();
    return r;
}

CohomologyReport betti(const ComplexPtr& c, const LocalSystem& s, bool with_representatives) {
    return TwistedCohomology(c, s, {with_representatives, false}).report();
}

SparseVector cup(int p, const SparseVector& a, int q, const SparseVector& f, const LocalSystem& s) {
    const Complex& c = *s.base();
    if (p < 0 || q < 0 || p > c.dimension() || q > c.dimension()) throw std::out_of_range("cup: degree out of range");
    if (!untwisted_coboundary(c, p, a).empty()) throw Error(ErrorCode::NotACocycle, "left factor is not an untwisted cocycle");
    if (!apply_coboundary(s, q, f).empty()) throw Error(ErrorCode::NotACocycle, "right factor is not a twisted cocycle");
    if (p + q > c.dimension() || a.empty() || f.empty()) return {};

    std::vector<Entry> out;
    const auto& cells = c.simplices(p + q);
    for (std::size_t r = 0; r < cells.size(); ++r) {
        const Simplex& sig = cells[r];
        std::span<const Vertex> front(sig.data(), p + 1);
        std::span<const Vertex> back(sig.data() + p, q + 1);
        Rational av = a.at(static_cast<Index>(*c.index_of(front)));
        if (av.is_zero()) continue;
        Rational fv = f.at(static_cast<Index>(*c.index_of(back)));
        if (fv.is_zero()) continue;
        out.push_back({static_cast<Index>(r), av * s.transport(sig[0], sig[p]) * fv});
    }
    return SparseVector(std::move(out));
}

SparseVector pullback_cochain(const SimplicialMap& f, const LocalSystem& s, int p, const SparseVector& cochain) {
    const Complex& src = *f.source;
    const Complex& tgt = *f.target;
    if (p < 0) throw std::out_of_range("pullback: negative degree");
    if (!cochain.empty() && (p > tgt.dimension() || cochain.back().index >= tgt.count(p)))
        throw Error(ErrorCode::DimensionMismatch, "cochain longer than C^" + std::to_string(p) + " of the target");
    if (cochain.empty() || p > src.dimension()) return {};

    std::vector<Entry> out;
    Simplex w(p + 1);
    for (std::size_t r = 0; r < src.count(p); ++r) {
        const Simplex& sig = src.simplex(p, r);
        for (int i = 0; i <= p; ++i) w[i] = f.vertex_image[sig[i]];
        // insertion sort, tracking the permutation parity
        bool odd = false, degenerate = false;
        for (int i = 1; i <= p && !degenerate; ++i) {
            for (int k = i; k > 0 && w[k - 1] >= w[k]; --k) {
                if (w[k - 1] == w[k]) {
                    degenerate = true;
                    break;
                }
                std::swap(w[k - 1], w[k]);
                odd = !odd;
            }
        }
        if (degenerate) continue;
        auto idx = tgt.index_of(w);
        if (!idx) throw Error(ErrorCode::InvalidMap, "simplex image is not in the target complex");
        Rational v = cochain.at(static_cast<Index>(*idx));
        if (v.is_zero()) continue;
        Rational val = s.transport(f.vertex_image[sig[0]], w[0]) * v;
        if (odd) val = -val;
        out.push_back({static_cast<Index>(r), std::move(val)});
    }
    return SparseVector(std::move(out));
}

std::vector<SparseMatrix> pullback_on_cohomology(const SimplicialMap& f, const TwistedCohomology& target,
                                                 const TwistedCohomology& source) {
    if (!(source.system() == pullback_system(f, target.system())))
        throw Error(ErrorCode::SystemNotPulledBack, "source system is not the pullback of the target system");
    const int top = std::max(target.groups().top_degree(), source.groups().top_degree());
    std::vector<SparseMatrix> out;
    for (int p = 0; p <= top; ++p) {
        std::vector<SparseVector> cols;
        if (p <= target.groups().top_degree()) {
            for (const auto& rep : target.groups().representatives(p)) {
                if (p > source.groups().top_degree()) {
                    cols.emplace_back();
                    continue;
                }
                auto coords = source.groups().coordinates(p, pullback_cochain(f, target.system(), p, rep));
                cols.push_back(SparseVector::from_dense(coords));
            }
        }
        out.emplace_back(source.betti(p), std::move(cols));
    }
    return out;
}

std::vector<SparseMatrix> pullback_on_cohomology(const SimplicialMap& f, const LocalSystem& s) {
    if (auto err = f.validate()) throw Error(ErrorCode::InvalidMap, *err);
    TwistedCohomology target(f.target, s);
    TwistedCohomology source(f.source, pullback_system(f, s));
    return pullback_on_cohomology(f, target, source);
}

SparseVector unit_cocycle(const Complex& c) {
    std::vector<Entry> e;
    e.reserve(c.count(0));
    for (std::size_t v = 0; v < c.count(0); ++v) e.push_back({static_cast<Index>(v), Rational(1)});
    return SparseVector(std::move(e));
}

// ---------------------------------------------------------------------------

LerayHirsch::LerayHirsch(const ComplexPtr& x, const LocalSystem& base_system, const ComplexPtr& fiber, const SparseVector& h, int m)
    : m_(m), product_(novikov::product(x, fiber)), base_system_(base_system) {
    total_system_ = pullback_system(product_.pr1, base_system_);
    build(h);
}

LerayHirsch::LerayHirsch(const Product& prod, const LocalSystem& product_system, const LocalSystem& base_system,
                         const SparseVector& h, int m)
    : m_(m), product_(prod), base_system_(base_system), total_system_(product_system) {
    if (!(product_system == pullback_system(prod.pr1, base_system)))
        throw Error(ErrorCode::SystemNotPulledBack, "product system is not pulled back from the base");
    build(h);
}

void LerayHirsch::build(const SparseVector& h) {
    if (m_ < 0) throw Error(ErrorCode::BadParams, "fiber dimension must be nonnegative");
    const ComplexPtr& fiber = product_.pr2.target;
    const ComplexPtr& x = product_.pr1.target;
    if (fiber->dimension() < 2 * m_) throw Error(ErrorCode::BadParams, "fiber has dimension below 2m");
    LocalSystem fiber_trivial = LocalSystem::trivial(fiber);

    base_ = std::make_unique<TwistedCohomology>(x, base_system_, CohomologyOptions{true, true});
    total_ = std::make_unique<TwistedCohomology>(product_.complex, total_system_, CohomologyOptions{false, true});

    // h^j on the fiber, lifted to the product
    LocalSystem prod_trivial = LocalSystem::trivial(product_.complex);
    std::vector<SparseVector> lifted;
    SparseVector hp = unit_cocycle(*fiber);
    for (int j = 0; j <= m_; ++j) {
        if (j > 0) hp = cup(2, h, 2 * (j - 1), hp, fiber_trivial);
        lifted.push_back(pullback_cochain(product_.pr2, fiber_trivial, 2 * j, hp));
    }

    const int top = product_.complex->dimension();
    basis_.assign(top + 1, {});
    basis_reducer_.clear();
    basis_slots_.assign(top + 1, {});
    for (int k = 0; k <= top; ++k) {
        basis_[k].assign(m_ + 1, {});
        auto reducer = std::make_unique<ColumnReducer>(product_.complex->count(k), true);
        for (int j = 0; j <= m_; ++j) {
            int d = k - 2 * j;
            if (d < 0 || d > x->dimension()) continue;
            for (const auto& alpha : base_->groups().representatives(d)) {
                SparseVector lifted_alpha = pullback_cochain(product_.pr1, base_system_, d, alpha);
                SparseVector b = cup(2 * j, lifted[j], d, lifted_alpha, total_system_);
                Index slot = static_cast<Index>(basis_slots_[k].size());
                if (!reducer->add(total_->groups().reduce_mod_image(k, b), slot).pivot)
                    throw Error(ErrorCode::DecompositionFailed, "lifted classes are dependent in degree " + std::to_string(k));
                basis_slots_[k].emplace_back(j, basis_[k][j].size());
                basis_[k][j].push_back(std::move(b));
            }
        }
        if (basis_slots_[k].size() != total_->betti(k))
            throw Error(ErrorCode::DecompositionFailed, "lifted classes span " + std::to_string(basis_slots_[k].size()) +
                                                            " of " + std::to_string(total_->betti(k)) + " dimensions in degree " +
                                                            std::to_string(k));
        basis_reducer_.push_back(std::move(reducer));
    }
}

const SparseVector& LerayHirsch::basis_vector(int k, int j, std::size_t i) const { return basis_.at(k).at(j).at(i); }

std::size_t LerayHirsch::basis_size(int k) const {
    return k < 0 || k >= static_cast<int>(basis_slots_.size()) ? 0 : basis_slots_[k].size();
}

std::vector<std::vector<Rational>> LerayHirsch::project(int k, const SparseVector& x) const {
    if (k < 0 || k >= static_cast<int>(basis_.size())) throw std::out_of_range("project: degree out of range");
    if (!total_->groups().is_cocycle(k, x)) throw Error(ErrorCode::NotACocycle, "class to project is not closed");
    std::vector<std::vector<Rational>> out(m_ + 1);
    for (int j = 0; j <= m_; ++j) out[j].assign(basis_[k][j].size(), Rational());
    auto red = basis_reducer_[k]->reduce(total_->groups().reduce_mod_image(k, x));
    if (!red.remainder.empty()) throw Error(ErrorCode::DecompositionFailed, "class is not in the span of the lifted basis");
    for (const auto& e : red.combination) {
        auto [j, i] = basis_slots_[k][e.index];
        out[j][i] = e.value;
    }
    return out;
}

std::vector<Rational> LerayHirsch::project(int k, const SparseVector& x, int j) const {
    if (j < 0 || j > m_) throw std::out_of_range("project: fiber power out of range");
    return project(k, x)[j];
}

SparseVector LerayHirsch::reassemble(int k, const std::vector<std::vector<Rational>>& coordinates) const {
    if (k < 0 || k >= static_cast<int>(basis_.size())) throw std::out_of_range("reassemble: degree out of range");
    SparseVector out;
    for (int j = 0; j <= m_ && j < static_cast<int>(coordinates.size()); ++j) {
        if (coordinates[j].size() != basis_[k][j].size())
            throw Error(ErrorCode::DimensionMismatch, "coordinate block " + std::to_string(j) + " has the wrong length");
        for (std::size_t i = 0; i < coordinates[j].size(); ++i)
            if (!coordinates[j][i].is_zero()) out.axpy(coordinates[j][i], basis_[k][j][i]);
    }
    return out;
}

} // namespace novikov
