#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/errors.hpp"
#include "flatcover/core/point_cloud.hpp"
#include "flatcover/core/rational.hpp"
#include "flatcover/reductions/graph.hpp"

namespace flatcover {

struct RmisParameters {
  std::size_t ell = 0, nu = 0, n = 0, q = 0, k = 0;
  BigInt p, W, ds, dl, B;
  bool faithful = false;
};

/// theta, phi and phi' for j = 1..nu, stored at index j-1.
struct ThetaTables {
  std::vector<BigInt> theta, phi, phi_prime;
};

inline BigInt theta_value(std::size_t i, std::size_t nu) {
  BigInt s = 0;
  for (std::size_t a = 1; a <= i; ++a) {
    const BigInt t = 3 * BigInt(static_cast<unsigned long>(i - a));
    s += t * t;
  }
  for (std::size_t b = i; b <= nu; ++b) {
    const BigInt t = 3 * BigInt(static_cast<unsigned long>(nu - b));
    s += t * t;
  }
  return s;
}

inline ThetaTables theta_tables(std::size_t ell, std::size_t nu, const BigInt& p) {
  ThetaTables t;
  const BigInt l(static_cast<unsigned long>(ell)), v(static_cast<unsigned long>(nu));
  for (std::size_t i = 1; i <= nu; ++i) {
    t.theta.push_back(theta_value(i, nu));
    t.phi.push_back(p * l * (v - 1) * t.theta.back());
    t.phi_prime.push_back(p * l * v * t.theta.back());
  }
  return t;
}

/// Budget n^7 + (n-l)W + l*sum_j (W + phi(j)) - lW + l*p*(n - nu + 1 - q - l).
inline BigInt rmis_budget(const RmisParameters& pr, const ThetaTables& th) {
  const BigInt n(static_cast<unsigned long>(pr.n)), l(static_cast<unsigned long>(pr.ell));
  BigInt sum = 0;
  for (const auto& f : th.phi) sum += pr.W + f;
  const BigInt tail = n - BigInt(static_cast<unsigned long>(pr.nu)) + 1 - BigInt(static_cast<unsigned long>(pr.q)) - l;
  return ipow(n, 7) + (n - l) * pr.W + l * sum - l * pr.W + l * pr.p * tail;
}

/// Line coordinates of the construction; bundle index i and vertex index
/// j are 0-based. Horizontal lines are stored as y, vertical ones as x.
struct RmisLines {
  std::vector<std::vector<BigInt>> h, v, s;
  BigInt top, bottom, left, right;  // the four fixed lines
  std::vector<BigInt> gh_rows, gh_cols, gv_rows, gv_cols;
};

enum class RmisFamily { FrameH, FrameV, X, ZH, ZV };

inline const char* to_string(RmisFamily f) {
  switch (f) {
    case RmisFamily::FrameH: return "frame_h";
    case RmisFamily::FrameV: return "frame_v";
    case RmisFamily::X: return "x";
    case RmisFamily::ZH: return "z_h";
    case RmisFamily::ZV: return "z_v";
  }
  return "?";
}

/// Provenance of an emitted record. For X records, a is the slot of the
/// horizontal line's vertex and b the slot of the vertical line's vertex;
/// for Z records, a is the slot of the carrying line. A slot is i*nu + j.
struct RmisTag {
  RmisFamily family;
  std::size_t a = 0, b = 0;
  bool on_s = false;
};

/// Line Clustering instance built from a colored regular graph. Records
/// are generated on demand: the faithful instance has far too many
/// distinct positions to store.
class RmisInstance {
 public:
  ColoredGraph graph;
  RmisParameters params;
  ThetaTables theta;
  RmisLines lines;
  std::vector<std::string> warnings;

  /// Vertex id of slot i*nu + j.
  std::size_t vertex_at(std::size_t i, std::size_t j) const { return graph.colors()[i][j]; }

  /// Calls visit(tag, x, y, mult) once per record.
  template <class Visit>
  void for_each_record(Visit&& visit) const {
    const auto& L = lines;
    const std::size_t nu = params.nu, n = params.n;
    const BigInt corner = 1 + params.dl;
    const BigInt one = 1;
    // Frame grids; corners carry the extra stack.
    for (std::size_t r = 0; r < L.gh_rows.size(); ++r)
      for (std::size_t c = 0; c < L.gh_cols.size(); ++c) {
        const bool is_corner = (r == 0 || r + 1 == L.gh_rows.size()) && (c == 0 || c + 1 == L.gh_cols.size());
        visit(RmisTag{RmisFamily::FrameH, r, c, false}, L.gh_cols[c], L.gh_rows[r], is_corner ? corner : one);
      }
    for (std::size_t r = 0; r < L.gv_rows.size(); ++r)
      for (std::size_t c = 0; c < L.gv_cols.size(); ++c) {
        const bool is_corner = (r == 0 || r + 1 == L.gv_rows.size()) && (c == 0 || c + 1 == L.gv_cols.size());
        visit(RmisTag{RmisFamily::FrameV, r, c, false}, L.gv_cols[c], L.gv_rows[r], is_corner ? corner : one);
      }
    // X: p points where the line of one vertex meets a vertical line of another.
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t i = a / nu, j = a % nu, va = vertex_at(i, j);
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t i2 = b / nu, j2 = b % nu;
        const bool on_s = i == i2 ? j != j2 : graph.adjacent(va, vertex_at(i2, j2));
        visit(RmisTag{RmisFamily::X, a, b, on_s}, on_s ? L.s[i2][j2] : L.v[i2][j2], L.h[i][j], params.p);
      }
    }
    // Z_v: W/4 above and below each horizontal fixed line on every s line.
    const BigInt quarter_w = params.W / 4;
    for (std::size_t a = 0; a < n; ++a) {
      const auto& x = L.s[a / nu][a % nu];
      for (const BigInt* y : {&L.top, &L.bottom}) {
        visit(RmisTag{RmisFamily::ZV, a, 0, false}, x, BigInt(*y + 1), quarter_w);
        visit(RmisTag{RmisFamily::ZV, a, 1, false}, x, BigInt(*y - 1), quarter_w);
      }
    }
    // Z_h: (W + phi(j))/4 left and right of each vertical fixed line on every
    // h line; any remainder goes to the leftmost spots.
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t i = a / nu, j = a % nu;
      const BigInt total = params.W + theta.phi[j];
      const BigInt base = total / 4;
      const unsigned long rem = mpz_fdiv_ui(total.get_mpz_t(), 4);
      const BigInt xs[4] = {L.left - 1, L.left + 1, L.right - 1, L.right + 1};
      for (unsigned long t = 0; t < 4; ++t) {
        const BigInt m = base + (t < rem ? 1 : 0);
        if (m > 0) visit(RmisTag{RmisFamily::ZH, a, t, false}, xs[t], L.h[i][j], m);
      }
    }
  }

  /// Number of records for_each_record emits.
  std::uint64_t record_count() const {
    const std::uint64_t n = params.n;
    return static_cast<std::uint64_t>(lines.gh_rows.size() * lines.gh_cols.size() +
                                      lines.gv_rows.size() * lines.gv_cols.size()) +
           n * n + 4 * n + 4 * n;
  }

  /// Total weight N.
  BigInt total_weight() const {
    BigInt w = 0;
    for_each_record([&](const RmisTag&, const BigInt&, const BigInt&, const BigInt& m) { w += m; });
    return w;
  }

  ExactCloud materialize(std::uint64_t max_records = 10'000'000ULL) const {
    const auto count = record_count();
    if (count > max_records) throw GuardError("materializing reduction instance", count, max_records);
    ExactCloud out(2);
    for_each_record([&](const RmisTag&, const BigInt& x, const BigInt& y, const BigInt& m) {
      out.add({Rational(x), Rational(y)}, m);
    });
    return out;
  }
};

/// Builds the Line Clustering instance. Faithful mode uses the full
/// constants and insists on nu divisible by 4, nu > l^3 and l > 10;
/// relaxed mode only needs an even nu and records a warning.
///
/// Frame: origin at the center of the central square. G_h rows sit at
/// y_r = (l+1)d_s/2 - (r-1)d_s (r = 1..l+2), its columns at
/// +-((d_l + (l+1)d_s)/2 + (c-1)d_l) (c = 1..l+3); G_v is the transpose.
/// h_i^j = y_{i+1} - 3(j - nu/2); v_i^j = x_{i+1} + 10n^2(j - nu/2) with
/// x_c the G_v columns; s_i^j = v_i^j - 1.
inline RmisInstance rmis_to_line_clustering(const ColoredGraph& g, bool faithful) {
  if (!g.colored()) throw std::invalid_argument("graph has no color classes");
  const auto q = g.regular_degree();
  if (!q) throw std::invalid_argument("graph is not regular");
  RmisInstance inst;
  inst.graph = g;
  auto& pr = inst.params;
  pr.ell = g.colors().size();
  pr.nu = g.colors()[0].size();
  pr.n = g.size();
  pr.q = *q;
  pr.k = 2 * pr.ell + 4;
  pr.faithful = faithful;
  if (pr.nu % 2 != 0) throw std::invalid_argument("class size nu must be even");
  if (faithful) {
    if (pr.nu % 4 != 0) throw std::invalid_argument("faithful mode needs nu divisible by 4");
    if (pr.ell <= 10) throw std::invalid_argument("faithful mode needs l > 10");
    if (BigInt(static_cast<unsigned long>(pr.nu)) <= ipow(static_cast<unsigned long>(pr.ell), 3))
      throw std::invalid_argument("faithful mode needs nu > l^3");
  } else {
    inst.warnings.push_back("relaxed parameters: the instance is not a faithful reduction output");
  }
  const BigInt n(static_cast<unsigned long>(pr.n));
  pr.p = ipow(n, 10);
  pr.W = ipow(n, 30);
  pr.ds = ipow(n, 40);
  pr.dl = ipow(n, 90);
  inst.theta = theta_tables(pr.ell, pr.nu, pr.p);
  pr.B = rmis_budget(pr, inst.theta);

  auto& L = inst.lines;
  const std::size_t ell = pr.ell, nu = pr.nu;
  const BigInt l(static_cast<unsigned long>(ell));
  const BigInt half_square = (l + 1) * pr.ds / 2;
  const BigInt inner = (pr.dl + (l + 1) * pr.ds) / 2;
  for (std::size_t r = 0; r < ell + 2; ++r) L.gh_rows.push_back(half_square - BigInt(static_cast<unsigned long>(r)) * pr.ds);
  for (std::size_t c = ell + 3; c-- > 0;) L.gh_cols.push_back(-(inner + BigInt(static_cast<unsigned long>(c)) * pr.dl));
  for (std::size_t c = 0; c < ell + 3; ++c) L.gh_cols.push_back(inner + BigInt(static_cast<unsigned long>(c)) * pr.dl);
  for (std::size_t c = 0; c < ell + 2; ++c) L.gv_cols.push_back(-half_square + BigInt(static_cast<unsigned long>(c)) * pr.ds);
  for (std::size_t r = 0; r < ell + 3; ++r) L.gv_rows.push_back(inner + BigInt(static_cast<unsigned long>(ell + 2 - r)) * pr.dl);
  for (std::size_t r = 0; r < ell + 3; ++r) L.gv_rows.push_back(-(inner + BigInt(static_cast<unsigned long>(r)) * pr.dl));
  L.top = L.gh_rows.front();
  L.bottom = L.gh_rows.back();
  L.left = L.gv_cols.front();
  L.right = L.gv_cols.back();
  const BigInt step_v = 10 * n * n;
  L.h.assign(ell, {});
  L.v.assign(ell, {});
  L.s.assign(ell, {});
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 1; j <= nu; ++j) {
      const BigInt off = BigInt(static_cast<long>(j)) - BigInt(static_cast<long>(nu / 2));
      L.h[i].push_back(L.gh_rows[i + 1] - 3 * off);
      L.v[i].push_back(L.gv_cols[i + 1] + step_v * off);
      L.s[i].push_back(L.v[i].back() - 1);
    }
  return inst;
}

/// Upper bound on what the frame points off the fixed lines can cost under
/// any canonical selection. The budget reserves n^7 for them.
inline BigInt frame_residual_bound(const RmisInstance& inst) {
  const auto& pr = inst.params;
  const BigInt n(static_cast<unsigned long>(pr.n));
  BigInt worst_h = 0, worst_s = 0;
  for (std::size_t j = 1; j <= pr.nu; ++j) {
    const BigInt off = BigInt(static_cast<long>(j)) - BigInt(static_cast<long>(pr.nu / 2));
    const BigInt dh = 3 * off, ds = 10 * n * n * off - 1;
    worst_h = std::max(worst_h, BigInt(dh * dh));
    worst_s = std::max(worst_s, BigInt(ds * ds));
  }
  const BigInt per_line(static_cast<unsigned long>(2 * pr.ell + 6));
  return BigInt(static_cast<unsigned long>(pr.ell)) * per_line * (worst_h + worst_s);
}

// Audit ---------------------------------------------------------------------

struct AuditCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct RmisAudit {
  std::vector<AuditCheck> checks;
  bool forward_slack_ok = false;  // frame residual fits in the n^7 reserve
  BigInt frame_residual;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.ok; });
  }
  const AuditCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Recounts every family from the emitted records and checks the count
/// identities, the budget and (faithful mode) B <= n^32.
inline RmisAudit audit_rmis(const RmisInstance& inst) {
  const auto& pr = inst.params;
  const std::size_t n = pr.n;
  std::vector<std::uint64_t> on_h(n, 0), on_s(n, 0), on_v(n, 0);
  std::uint64_t x_bad_mult = 0, x_records = 0;
  BigInt zv = 0, zh = 0, frame = 0;
  std::vector<BigInt> zh_line(n, 0), zv_line(n, 0);
  inst.for_each_record([&](const RmisTag& t, const BigInt& x, const BigInt& y, const BigInt& m) {
    switch (t.family) {
      case RmisFamily::X: {
        ++x_records;
        if (m != pr.p) ++x_bad_mult;
        const std::size_t i2 = t.b / pr.nu, j2 = t.b % pr.nu, i = t.a / pr.nu, j = t.a % pr.nu;
        if (y != inst.lines.h[i][j]) ++x_bad_mult;
        if (x == inst.lines.s[i2][j2])
          ++on_s[t.b];
        else if (x == inst.lines.v[i2][j2])
          ++on_v[t.b];
        else
          ++x_bad_mult;
        ++on_h[t.a];
        break;
      }
      case RmisFamily::ZV:
        zv += m;
        zv_line[t.a] += m;
        break;
      case RmisFamily::ZH:
        zh += m;
        zh_line[t.a] += m;
        break;
      default:
        frame += m;
    }
  });
  RmisAudit out;
  auto add = [&](std::string name, bool ok, std::string detail) { out.checks.push_back({std::move(name), ok, std::move(detail)}); };
  const BigInt N(static_cast<unsigned long>(n));
  add("x_multiplicity", x_bad_mult == 0 && x_records == static_cast<std::uint64_t>(n) * n,
      std::to_string(x_records) + " X records, " + std::to_string(x_bad_mult) + " off-line or off-weight");
  const std::uint64_t want_s = pr.q + pr.nu - 1, want_v = n - pr.q - pr.nu + 1;
  bool h_ok = true, s_ok = true, v_ok = true;
  for (std::size_t a = 0; a < n; ++a) {
    h_ok = h_ok && on_h[a] == n;
    s_ok = s_ok && on_s[a] == want_s;
    v_ok = v_ok && on_v[a] == want_v;
  }
  add("x_weight_per_h_line", h_ok, "each h line carries n*p = " + BigInt(N * pr.p).get_str());
  add("x_weight_per_s_line", s_ok, "each s line carries (q+nu-1)*p = " + BigInt(want_s * pr.p).get_str());
  add("x_weight_per_v_line", v_ok, "each v line carries (n-q-nu+1)*p = " + BigInt(want_v * pr.p).get_str());
  bool zv_lines = true;
  for (const auto& w : zv_line) zv_lines = zv_lines && w == pr.W;
  add("z_v_total", zv == N * pr.W && zv_lines, "|Z_v| = " + zv.get_str());
  BigInt want_zh = 0;
  bool zh_lines = true;
  for (std::size_t a = 0; a < n; ++a) zh_lines = zh_lines && zh_line[a] == pr.W + inst.theta.phi[a % pr.nu];
  for (const auto& f : inst.theta.phi) want_zh += pr.W + f;
  want_zh *= BigInt(static_cast<unsigned long>(pr.ell));
  add("z_h_total", zh == want_zh && zh_lines, "|Z_h| = " + zh.get_str());
  const BigInt K(static_cast<unsigned long>(pr.k));
  add("f_total", frame == 8 * pr.dl + K * K + 2 * K, "|F| = " + frame.get_str());
  add("budget", rmis_budget(pr, theta_tables(pr.ell, pr.nu, pr.p)) == pr.B, "B = " + pr.B.get_str());
  if (pr.faithful) add("budget_bound", pr.B <= ipow(N, 32), "B <= n^32");
  out.frame_residual = frame_residual_bound(inst);
  out.forward_slack_ok = out.frame_residual <= ipow(N, 7);
  return out;
}

}  // namespace flatcover
