#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "flatcover/clustering/solution.hpp"
#include "flatcover/core/hyperplane.hpp"
#include "flatcover/core/point_cloud.hpp"
#include "flatcover/core/scalar.hpp"
#include "flatcover/fitting/best_fit.hpp"
#include "flatcover/reductions/dominating_set.hpp"
#include "flatcover/reductions/graph.hpp"
#include "flatcover/reductions/rmis.hpp"

namespace flatcover::io {

using Json = nlohmann::ordered_json;
using AnyCloud = std::variant<FloatCloud, ExactCloud>;

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

inline Json parse_json(const std::string& text, const std::string& what = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- scalars

inline Json rational_json(const Rational& q) { return format_rational(q); }

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

inline BigInt bigint_from(const Json& j) {
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (!is_integer(q)) throw std::invalid_argument("expected an integer, got " + j.dump());
    return q.get_num();
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

// Multiplicities small enough for a JSON integer stay numeric.
inline Json bigint_json(const BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

// ---- point clouds

inline Json cloud_json(const FloatCloud& c) {
  Json pts = Json::array();
  for (const auto& r : c.records()) pts.push_back({{"coords", r.coords}, {"mult", bigint_json(r.mult)}});
  return {{"dim", c.dim()}, {"scalar", "float"}, {"points", pts}};
}

inline Json cloud_json(const ExactCloud& c) {
  Json pts = Json::array();
  for (const auto& r : c.records()) {
    Json xs = Json::array();
    for (const auto& q : r.coords) xs.push_back(rational_json(q));
    pts.push_back({{"coords", xs}, {"mult", bigint_json(r.mult)}});
  }
  return {{"dim", c.dim()}, {"scalar", "rational"}, {"points", pts}};
}

inline AnyCloud cloud_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
    throw std::invalid_argument("point cloud needs \"dim\" and \"points\"");
  const auto dim = j.at("dim").get<std::size_t>();
  const ScalarMode mode = parse_scalar_mode(j.value("scalar", std::string("float")));
  auto mult_of = [](const Json& p) { return p.contains("mult") ? bigint_from(p.at("mult")) : BigInt(1); };
  if (mode == ScalarMode::Float) {
    FloatCloud c(dim);
    for (const auto& p : j.at("points")) {
      std::vector<double> xs;
      for (const auto& v : p.at("coords")) {
        if (!v.is_number()) throw ModeMismatch();
        xs.push_back(v.get<double>());
      }
      c.add(std::move(xs), mult_of(p));
    }
    return c;
  }
  ExactCloud c(dim);
  for (const auto& p : j.at("points")) {
    std::vector<Rational> xs;
    for (const auto& v : p.at("coords")) {
      if (v.is_number_float()) throw ModeMismatch();
      xs.push_back(rational_from(v));
    }
    c.add(std::move(xs), mult_of(p));
  }
  return c;
}

/// Float CSV: one point per row; with mult_column the last field is the
/// multiplicity. Blank lines and lines starting with '#' are skipped.
inline FloatCloud cloud_from_csv(const std::string& text, bool mult_column = false) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  std::vector<BigInt> mults;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (mult_column) {
      if (fields.size() < 2) throw std::invalid_argument("csv row needs coordinates and a multiplicity");
      mults.push_back(BigInt(fields.back()));
      fields.pop_back();
    } else {
      mults.push_back(1);
    }
    std::vector<double> xs;
    for (const auto& s : fields) {
      try {
        std::size_t used = 0;
        xs.push_back(std::stod(s, &used));
        if (s.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad csv number: '" + s + "'");
      }
    }
    if (!rows.empty() && xs.size() != rows.front().size()) throw std::invalid_argument("ragged csv rows");
    rows.push_back(std::move(xs));
  }
  if (rows.empty()) throw std::invalid_argument("csv has no points");
  FloatCloud c(rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) c.add(std::move(rows[i]), mults[i]);
  return c;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline AnyCloud load_cloud(const std::string& path, bool csv_mult = false) {
  const std::string text = read_text(path);
  if (ends_with(path, ".csv")) return cloud_from_csv(text, csv_mult);
  Json j = parse_json(text, path);
  // Reduction outputs wrap the cloud.
  if (j.contains("instance")) j = j.at("instance");
  return cloud_from_json(j);
}

inline FloatCloud as_float(const AnyCloud& c) {
  if (auto* f = std::get_if<FloatCloud>(&c)) return *f;
  return to_float(std::get<ExactCloud>(c));
}

inline ExactCloud require_exact(const AnyCloud& c) {
  if (auto* e = std::get_if<ExactCloud>(&c)) return *e;
  // Every double is a dyadic rational, so float input converts losslessly.
  const auto& f = std::get<FloatCloud>(c);
  ExactCloud out(f.dim());
  for (const auto& r : f.records()) {
    std::vector<Rational> xs;
    for (double v : r.coords) xs.emplace_back(v);
    out.add(std::move(xs), r.mult);
  }
  return out;
}

// ---- flats and solutions

inline Json flat_json(const AffineFlat& f) {
  Json basis = Json::array();
  for (Eigen::Index c = 0; c < f.flat_dim(); ++c) {
    std::vector<double> col(f.basis().col(c).data(), f.basis().col(c).data() + f.ambient_dim());
    basis.push_back(col);
  }
  std::vector<double> off(f.offset().data(), f.offset().data() + f.ambient_dim());
  return {{"basis", basis}, {"offset", off}};
}

inline AffineFlat flat_from_json(const Json& j) {
  const auto off = j.at("offset").get<std::vector<double>>();
  const auto cols = j.at("basis").get<std::vector<std::vector<double>>>();
  const auto d = static_cast<Eigen::Index>(off.size());
  Eigen::MatrixXd b(d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (static_cast<Eigen::Index>(cols[c].size()) != d) throw std::invalid_argument("basis column has wrong length");
    for (Eigen::Index i = 0; i < d; ++i) b(i, static_cast<Eigen::Index>(c)) = cols[c][static_cast<std::size_t>(i)];
  }
  return AffineFlat::canonicalize(b, Eigen::Map<const Eigen::VectorXd>(off.data(), d));
}

inline Json fit_json(const FitResult& fr) {
  Json j = flat_json(fr.flat);
  j["r"] = fr.flat.flat_dim();
  j["cost"] = fr.cost;
  j["spectrum"] = fr.spectrum;
  return j;
}

inline Json solution_json(const ClusteringSolution& s, std::size_t k, std::size_t r) {
  Json flats = Json::array();
  for (const auto& f : s.flats) flats.push_back(flat_json(f));
  return {{"k", k}, {"r", r}, {"cost", s.cost}, {"flats", flats}, {"assignment", s.assignment}};
}

inline ClusteringSolution solution_from_json(const Json& j) {
  ClusteringSolution s;
  for (const auto& f : j.at("flats")) s.flats.push_back(flat_from_json(f));
  if (j.contains("assignment")) s.assignment = j.at("assignment").get<std::vector<std::size_t>>();
  if (j.contains("cost") && j.at("cost").is_number()) s.cost = j.at("cost").get<double>();
  return s;
}

inline Json hyperplane_json(const Hyperplane& h) {
  Json c = Json::array();
  for (const auto& z : h.coeffs()) c.push_back(z.get_str());
  return c;
}

inline Hyperplane hyperplane_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(rational_from(v));
  return Hyperplane::from_coefficients(c);
}

inline Json cover_json(const std::vector<Hyperplane>& planes) {
  Json hs = Json::array();
  for (const auto& h : planes) hs.push_back(hyperplane_json(h));
  return {{"k", planes.size()}, {"hyperplanes", hs}};
}

inline std::vector<Hyperplane> cover_from_json(const Json& j) {
  std::vector<Hyperplane> out;
  for (const auto& h : j.at("hyperplanes")) out.push_back(hyperplane_from_json(h));
  return out;
}

// ---- graphs

inline Json graph_json(const ColoredGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  Json j = {{"n", g.size()}, {"edges", edges}};
  if (g.colored()) j["colors"] = g.colors();
  return j;
}

inline ColoredGraph graph_from_json(const Json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  ColoredGraph g = ColoredGraph::from_edges(n, edges);
  if (j.contains("colors")) g.set_colors(j.at("colors").get<std::vector<std::vector<std::size_t>>>());
  return g;
}

// ---- reduction outputs

inline Json vandermonde_json(const VandermondeInstance& inst, bool strict = true) {
  Json j;
  j["reduction"] = "dominating-set";
  j["instance"] = cloud_json(inst.cloud);
  j["k"] = std::to_string(inst.k);
  j["strict"] = strict;
  j["graph"] = graph_json(inst.graph);
  j["meta"] = {{"vertex_of", inst.vertex_of}, {"copy_of", inst.copy_of}};
  return j;
}

inline VandermondeInstance vandermonde_from_json(const Json& j) {
  if (j.value("reduction", std::string()) != "dominating-set") throw std::invalid_argument("not a dominating-set reduction");
  const BigInt k = bigint_from(j.at("k"));
  return ds_to_hyperplane_cover(graph_from_json(j.at("graph")), k.get_ui(), j.value("strict", true));
}

inline Json bigint_vector_json(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(z.get_str());
  return a;
}

/// Parameters, line tables and the graph. The point cloud itself is
/// attached only when the caller asks for it, since faithful instances
/// have hundreds of millions of records.
inline Json rmis_json(const RmisInstance& inst, bool with_points, std::uint64_t max_records = 10'000'000ULL) {
  const auto& pr = inst.params;
  const auto& L = inst.lines;
  Json j;
  j["reduction"] = "rmis";
  j["faithful"] = pr.faithful;
  j["k"] = std::to_string(pr.k);
  j["B"] = pr.B.get_str();
  auto table = [](const std::vector<std::vector<BigInt>>& t) {
    Json a = Json::array();
    for (const auto& row : t) a.push_back(bigint_vector_json(row));
    return a;
  };
  j["meta"] = {
      {"params",
       {{"ell", pr.ell}, {"nu", pr.nu}, {"n", pr.n}, {"q", pr.q}, {"p", pr.p.get_str()}, {"W", pr.W.get_str()},
        {"d_s", pr.ds.get_str()}, {"d_l", pr.dl.get_str()}}},
      {"theta",
       {{"theta", bigint_vector_json(inst.theta.theta)},
        {"phi", bigint_vector_json(inst.theta.phi)},
        {"phi_prime", bigint_vector_json(inst.theta.phi_prime)}}},
      {"lines",
       {{"top", L.top.get_str()}, {"bottom", L.bottom.get_str()}, {"left", L.left.get_str()},
        {"right", L.right.get_str()}, {"h", table(L.h)}, {"v", table(L.v)}, {"s", table(L.s)}}},
      {"record_count", inst.record_count()},
      {"total_weight", inst.total_weight().get_str()},
      {"warnings", inst.warnings}};
  j["graph"] = graph_json(inst.graph);
  if (with_points) j["instance"] = cloud_json(inst.materialize(max_records));
  return j;
}

inline RmisInstance rmis_from_json(const Json& j) {
  if (j.value("reduction", std::string()) != "rmis") throw std::invalid_argument("not an rmis reduction");
  return rmis_to_line_clustering(graph_from_json(j.at("graph")), j.value("faithful", false));
}

}  // namespace flatcover::io
