#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "flatcover/core/errors.hpp"
#include "flatcover/core/exact_linalg.hpp"
#include "flatcover/core/guard.hpp"
#include "flatcover/cover/candidates.hpp"
#include "flatcover/cover/verify.hpp"
#include "flatcover/fitting/hyperplane_fit.hpp"

namespace flatcover {

struct CoverOptions {
  std::uint64_t guard = kDefaultCandidateGuard;  // subsets enumerated per search node
  bool kernel = false;                           // forced-line preprocessing (d = 2 only)
};

struct CoverResult {
  bool feasible = false;
  std::vector<Hyperplane> hyperplanes;  // witness when feasible
  std::uint64_t nodes = 0;
  bool exact_fallback = false;  // the modular search was discarded
};

namespace detail {

// Fields ---------------------------------------------------------------------

/// Arithmetic modulo a prime below 2^63.
struct ModField {
  using Elem = std::uint64_t;
  std::uint64_t p;

  static constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const {
    const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
    if (p == kMersenne61) {
      Elem r = static_cast<Elem>(x & kMersenne61) + static_cast<Elem>(x >> 61);
      return r >= p ? r - p : r;
    }
    return static_cast<Elem>(x % p);
  }
  Elem inv(Elem a) const {
    Elem r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  std::optional<Elem> from(const Rational& q) const {
    const Elem den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) return std::nullopt;
    return mul(mpz_fdiv_ui(q.get_num_mpz_t(), p), inv(den));
  }
};

struct RationalField {
  using Elem = Rational;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return 1 / a; }
  std::optional<Elem> from(const Rational& q) const { return q; }
};

// Bit masks over positions -----------------------------------------------------

using Mask = std::vector<std::uint64_t>;

inline void mask_set(Mask& m, std::size_t i) { m[i >> 6] |= 1ULL << (i & 63); }
inline bool mask_test(const Mask& m, std::size_t i) { return (m[i >> 6] >> (i & 63)) & 1ULL; }
inline std::size_t mask_count(const Mask& m) {
  std::size_t c = 0;
  for (auto w : m) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}
inline std::vector<std::size_t> mask_indices(const Mask& m) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::uint64_t w = m[k]; w; w &= w - 1) out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  return out;
}

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto w : m) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

/// The modular engine met a subset it cannot classify soundly.
struct ModularFailure {};

// Search -----------------------------------------------------------------------

template <class F>
class CoverSearch {
 public:
  using E = typename F::Elem;

  CoverSearch(F field, const std::vector<ExactVector>& exact, const std::vector<std::vector<E>>& pts, bool modular,
              std::uint64_t guard)
      : f_(field), exact_(exact), pts_(pts), d_(exact.empty() ? 1 : exact[0].size()), modular_(modular), guard_(guard) {}

  bool solve(const Mask& uncovered, std::size_t kappa) {
    ++nodes;
    const std::size_t cnt = mask_count(uncovered);
    if (cnt == 0) return true;
    if (kappa == 0) return false;
    const auto idx = mask_indices(uncovered);
    if (cnt <= kappa * d_) {
      for (std::size_t s = 0; s < idx.size(); s += d_)
        witness.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(s),
                             idx.begin() + static_cast<std::ptrdiff_t>(std::min(idx.size(), s + d_)));
      return true;
    }
    if (kappa == 1) {
      if (direction_rank(idx) >= d_) return false;
      witness.push_back(idx);
      return true;
    }
    const BigInt work = subset_count(cnt - 1, d_ - 1) + 1;
    if (work > BigInt(static_cast<unsigned long>(guard_)))
      throw GuardError("cover branching", saturate_u64(work), guard_);
    auto cands = candidates(uncovered, idx);
    for (const auto& c : cands) {
      Mask rest = uncovered;
      for (std::size_t w = 0; w < rest.size(); ++w) rest[w] &= ~c.covered[w];
      witness.push_back(c.subset);
      if (solve(rest, kappa - 1)) return true;
      witness.pop_back();
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> witness;  // position groups, one hyperplane each
  std::uint64_t nodes = 0;

 private:
  struct Cand {
    Mask covered;
    std::vector<std::size_t> subset;
    std::size_t size;
  };

  struct Row {
    std::vector<E> v;
    std::size_t pivot;
  };

  std::vector<E> diff(std::size_t i, std::size_t base) const {
    std::vector<E> v(d_);
    for (std::size_t j = 0; j < d_; ++j) v[j] = f_.sub(pts_[i][j], pts_[base][j]);
    return v;
  }

  /// Reduces v against the echelon rows; appends it (normalized) when it is
  /// independent and reports whether it was.
  bool insert(std::vector<Row>& rows, std::vector<E> v) const {
    for (const auto& r : rows) {
      if (f_.is_zero(v[r.pivot])) continue;
      const E c = v[r.pivot];
      for (std::size_t j = 0; j < d_; ++j) v[j] = f_.sub(v[j], f_.mul(c, r.v[j]));
    }
    std::size_t piv = 0;
    while (piv < d_ && f_.is_zero(v[piv])) ++piv;
    if (piv == d_) return false;
    const E s = f_.inv(v[piv]);
    for (auto& e : v) e = f_.mul(e, s);
    rows.push_back({std::move(v), piv});
    return true;
  }

  std::size_t direction_rank(const std::vector<std::size_t>& idx) const {
    std::vector<Row> rows;
    for (std::size_t t = 1; t < idx.size() && rows.size() < d_; ++t) insert(rows, diff(idx[t], idx[0]));
    return rows.size();
  }

  bool exactly_independent(const std::vector<std::size_t>& subset) const {
    ExactMatrix dirs;
    for (std::size_t t = 1; t < subset.size(); ++t) {
      ExactVector v(d_);
      for (std::size_t j = 0; j < d_; ++j) v[j] = exact_[subset[t]][j] - exact_[subset[0]][j];
      dirs.push_back(std::move(v));
    }
    return dirs.empty() || exact_rank(dirs) == dirs.size();
  }

  /// Normal vector of the hyperplane spanned by the rows after completion
  /// along e_1, e_2, ...
  std::vector<E> normal(std::vector<Row> rows) const {
    for (std::size_t j = 0; j < d_ && rows.size() + 1 < d_; ++j) {
      std::vector<E> e(d_, f_.zero());
      e[j] = f_.one();
      insert(rows, std::move(e));
    }
    // Back-substitution to reduced echelon form.
    for (std::size_t a = rows.size(); a-- > 0;)
      for (std::size_t b = 0; b < a; ++b) {
        const E c = rows[b].v[rows[a].pivot];
        if (f_.is_zero(c)) continue;
        for (std::size_t j = 0; j < d_; ++j) rows[b].v[j] = f_.sub(rows[b].v[j], f_.mul(c, rows[a].v[j]));
      }
    std::vector<bool> is_pivot(d_, false);
    for (const auto& r : rows) is_pivot[r.pivot] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<E> n(d_, f_.zero());
    n[free_col] = f_.one();
    for (const auto& r : rows) n[r.pivot] = f_.sub(f_.zero(), r.v[free_col]);
    return n;
  }

  E eval(const std::vector<E>& n, std::size_t i) const {
    E s = f_.zero();
    for (std::size_t j = 0; j < d_; ++j) s = f_.add(s, f_.mul(n[j], pts_[i][j]));
    return s;
  }

  std::vector<Cand> candidates(const Mask& uncovered, const std::vector<std::size_t>& idx) {
    std::vector<Cand> out;
    std::unordered_map<Mask, std::size_t, MaskHash> seen;
    std::vector<std::size_t> chosen{idx[0]};
    std::vector<Row> rows;
    auto emit = [&] {
      const auto n = normal(rows);
      const E off = eval(n, chosen[0]);
      Mask cov(uncovered.size(), 0);
      for (auto i : idx)
        if (eval(n, i) == off) mask_set(cov, i);
      if (seen.emplace(cov, out.size()).second) {
        const std::size_t sz = mask_count(cov);
        out.push_back({std::move(cov), chosen, sz});
      }
    };
    // Depth-first over subsets of the uncovered positions that contain the
    // lowest one, keeping an echelon form of their directions.
    auto grow = [&](auto&& self, std::size_t from) -> void {
      emit();
      if (chosen.size() == d_) return;
      for (std::size_t t = from; t < idx.size(); ++t) {
        std::vector<Row> saved = rows;
        if (!insert(rows, diff(idx[t], chosen[0]))) {
          if (modular_) {
            chosen.push_back(idx[t]);
            const bool indep = exactly_independent(chosen);
            chosen.pop_back();
            if (indep) throw ModularFailure{};
          }
          continue;
        }
        chosen.push_back(idx[t]);
        self(self, t + 1);
        chosen.pop_back();
        rows = std::move(saved);
      }
    };
    grow(grow, 1);
    std::stable_sort(out.begin(), out.end(), [](const Cand& a, const Cand& b) { return a.size > b.size; });
    return out;
  }

  F f_;
  const std::vector<ExactVector>& exact_;
  const std::vector<std::vector<E>>& pts_;
  std::size_t d_;
  bool modular_;
  std::uint64_t guard_;
};

inline std::vector<std::uint64_t> modular_primes() {
  std::vector<std::uint64_t> ps{ModField::kMersenne61};
  BigInt q = BigInt("1000000000000000000");
  for (int t = 0; t < 2; ++t) {
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    ps.push_back(mpz_get_ui(q.get_mpz_t()));
  }
  return ps;
}

/// Exact hyperplanes for the witness groups; nullopt if a group spans the
/// whole space or the result does not cover.
inline std::optional<std::vector<Hyperplane>> realize_witness(const ExactCloud& cloud,
                                                              const std::vector<ExactVector>& pos,
                                                              const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<Hyperplane> planes;
  for (const auto& g : groups) {
    std::vector<ExactVector> pts;
    for (auto i : g) pts.push_back(pos[i]);
    auto h = hyperplane_through(pts);
    if (!h) return std::nullopt;
    if (std::find(planes.begin(), planes.end(), *h) == planes.end()) planes.push_back(*h);
  }
  if (!verify_cover(cloud, planes)) return std::nullopt;
  return planes;
}

template <class F>
std::optional<CoverResult> run_search(const ExactCloud& cloud, const std::vector<ExactVector>& pos, F field,
                                      bool modular, std::size_t k, std::uint64_t guard) {
  using E = typename F::Elem;
  std::vector<std::vector<E>> pts;
  for (const auto& x : pos) {
    std::vector<E> row;
    for (const auto& q : x) {
      auto e = field.from(q);
      if (!e) return std::nullopt;
      row.push_back(*e);
    }
    pts.push_back(std::move(row));
  }
  CoverSearch<F> search(field, pos, pts, modular, guard);
  Mask all((pos.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < pos.size(); ++i) mask_set(all, i);
  CoverResult res;
  try {
    res.feasible = search.solve(all, k);
  } catch (const ModularFailure&) {
    return std::nullopt;
  }
  res.nodes = search.nodes;
  if (res.feasible) {
    auto planes = realize_witness(cloud, pos, search.witness);
    if (!planes) {
      if (modular) return std::nullopt;
      throw IntegrityError("exact cover search produced an invalid witness");
    }
    res.hyperplanes = std::move(*planes);
  }
  return res;
}

}  // namespace detail

/// Decides whether k hyperplanes cover every position, exactly.
///
/// Branches on the hyperplanes through the lowest uncovered position that
/// are fitted to subsets of uncovered positions, largest coverage first.
/// Two shortcuts end a branch early: at most kappa*d uncovered positions
/// always fit on kappa hyperplanes, and with one hyperplane left the answer
/// is the affine rank of what remains.
///
/// The search first runs modulo a large prime. A modular hyperplane covers
/// a superset of its rational counterpart, so a modular NO is a rational
/// NO as long as no subset is independent over Q but dependent mod p (that
/// case is detected). Modular YES witnesses are rebuilt and checked over Q;
/// any failure reruns the search in rational arithmetic.
inline CoverResult solve_cover(const ExactCloud& cloud, std::size_t k, const CoverOptions& opt = {});

struct KernelResult {
  bool feasible = true;  // false: no cover with k lines exists
  ExactCloud reduced;
  std::vector<Hyperplane> forced;
  std::size_t k = 0;
};

/// Line Cover kernel: while k > 0 and some line passes through at least
/// k + 1 remaining positions, that line is forced (first such pair of
/// positions in index order), its positions are dropped and k decreases.
/// More than k^2 remaining positions afterwards means NO.
inline KernelResult forced_line_kernel(const ExactCloud& cloud, std::size_t k) {
  if (cloud.dim() != 2) throw std::invalid_argument("forced_line_kernel requires d = 2");
  KernelResult out;
  out.k = k;
  auto groups = distinct_positions(cloud);
  auto pos = position_coords(cloud, groups);
  for (;;) {
    if (out.k == 0) break;
    std::optional<Hyperplane> line;
    for (std::size_t i = 0; i < pos.size() && !line; ++i)
      for (std::size_t j = i + 1; j < pos.size() && !line; ++j) {
        Hyperplane h = fit_hyperplane_exact({pos[i], pos[j]});
        std::size_t on = 0;
        for (const auto& x : pos) on += h.contains(x) ? 1 : 0;
        if (on >= out.k + 1) line = h;
      }
    if (!line) break;
    out.forced.push_back(*line);
    --out.k;
    std::vector<std::vector<std::size_t>> g2;
    std::vector<ExactVector> p2;
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (!line->contains(pos[i])) {
        g2.push_back(groups[i]);
        p2.push_back(pos[i]);
      }
    groups = std::move(g2);
    pos = std::move(p2);
  }
  std::vector<std::size_t> keep;
  for (const auto& g : groups) keep.insert(keep.end(), g.begin(), g.end());
  std::sort(keep.begin(), keep.end());
  out.reduced = cloud.subset(keep);
  if (pos.size() > out.k * out.k) out.feasible = false;
  return out;
}

inline CoverResult solve_cover(const ExactCloud& cloud, std::size_t k, const CoverOptions& opt) {
  if (opt.kernel) {
    auto ker = forced_line_kernel(cloud, k);
    CoverResult res;
    if (!ker.feasible) return res;
    CoverOptions inner = opt;
    inner.kernel = false;
    res = solve_cover(ker.reduced, ker.k, inner);
    if (res.feasible) res.hyperplanes.insert(res.hyperplanes.begin(), ker.forced.begin(), ker.forced.end());
    return res;
  }
  const auto groups = distinct_positions(cloud);
  const auto pos = position_coords(cloud, groups);
  for (auto p : detail::modular_primes()) {
    auto r = detail::run_search(cloud, pos, detail::ModField{p}, true, k, opt.guard);
    if (r) return *r;
  }
  auto r = detail::run_search(cloud, pos, detail::RationalField{}, false, k, opt.guard);
  r->exact_fallback = true;
  return *r;
}

}  // namespace flatcover
