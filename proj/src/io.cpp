#include "latcor/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace latcor::io {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(Errc::ParseError, message); }

const json& member(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(std::string("missing field '") + key + "'");
  return doc.at(key);
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (!is_integer(q)) fail("expected an integer, got '" + j.get<std::string>() + "'");
    return numerator(q);
  }
  fail("expected an integer");
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

IntMatrix gram_from_json(const json& doc) {
  const json& rows = member(doc, "gram");
  if (!rows.is_array() || rows.empty()) fail("'gram' must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail("'gram' must be square");
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = integer_from_json(row.at(static_cast<std::size_t>(j)));
  }
  if (!is_symmetric(g)) throw Error(Errc::NotSymmetric, "'gram' is not symmetric");
  return g;
}

IntMatrix load_gram(const std::filesystem::path& path) { return gram_from_json(read_json_file(path)); }

json gram_to_json(const IntMatrix& gram) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < gram.cols(); ++j) row.push_back(gram(i, j).convert_to<std::int64_t>());
    rows.push_back(row);
  }
  return json{{"gram", rows}};
}

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) fail("rationals must be \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

json element_to_json(const GroupElement& x) { return x.coeffs; }

GroupElement element_from_json(const json& j) {
  if (!j.is_array()) fail("group elements must be integer arrays");
  GroupElement x;
  for (const auto& c : j) {
    if (!c.is_number_integer()) fail("group element coefficients must be integers");
    x.coeffs.push_back(c.get<std::int64_t>());
  }
  return x;
}

json subgroup_to_json(const Subgroup& h) {
  json elements = json::array();
  for (const auto& x : h.elements) elements.push_back(element_to_json(x));
  json generators = json::array();
  for (const auto& x : h.generators) generators.push_back(element_to_json(x));
  return json{{"elements", elements}, {"generators", generators}};
}

Subgroup subgroup_from_json(const json& j) {
  Subgroup h;
  for (const auto& x : member(j, "elements")) h.elements.push_back(element_from_json(x));
  for (const auto& x : member(j, "generators")) h.generators.push_back(element_from_json(x));
  return h;
}

json rat_matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RatMatrix rat_matrix_from_json(const json& j) {
  if (!j.is_array()) fail("matrix must be an array of rows");
  const auto k = static_cast<Eigen::Index>(j.size());
  RatMatrix m(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != k) fail("matrix must be square");
    for (Eigen::Index c = 0; c < k; ++c) m(r, c) = rational_from_json(row.at(static_cast<std::size_t>(c)));
  }
  return m;
}

json dual_vector_to_json(const DualVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.coords.size(); ++i) out.push_back(rational_to_json(v.coords(i)));
  return out;
}

DInvariantTable dtable_from_json(const json& doc) {
  DInvariantTable table;
  const json& orders = member(doc, "orders");
  if (!orders.is_array()) fail("'orders' must be an array");
  for (const auto& d : orders) {
    if (!d.is_number_integer()) fail("'orders' entries must be integers");
    table.orders.push_back(d.get<std::int64_t>());
  }
  table.pairing = rat_matrix_from_json(member(doc, "pairing"));
  if (table.pairing.rows() != static_cast<Eigen::Index>(table.orders.size()))
    fail("'pairing' must be k x k for k = number of orders");

  const json& flag = member(doc, "z2_homology_sphere");
  if (!flag.is_boolean()) fail("'z2_homology_sphere' must be a boolean");
  table.z2_homology_sphere = flag.get<bool>();
  const bool all_odd = std::all_of(table.orders.begin(), table.orders.end(), [](auto d) { return d % 2 != 0; });
  if (table.z2_homology_sphere != all_odd)
    fail("'z2_homology_sphere' must be true exactly when every order is odd");

  // validates orders and the pairing
  const DiscGroup group = table.group();
  for (const auto& entry : member(doc, "d")) {
    GroupElement x = element_from_json(member(entry, "elem"));
    if (!group.is_valid(x)) fail("d-table element is not in canonical range");
    const Rational value = rational_from_json(member(entry, "value"));
    if (!table.values.emplace(std::move(x), value).second) fail("d-table lists an element twice");
  }
  return table;
}

DInvariantTable load_dtable(const std::filesystem::path& path) { return dtable_from_json(read_json_file(path)); }

json dtable_to_json(const DInvariantTable& table) {
  json d = json::array();
  for (const auto& [x, v] : table.values) d.push_back(json{{"elem", element_to_json(x)}, {"value", rational_to_json(v)}});
  return json{{"orders", table.orders},
              {"pairing", rat_matrix_to_json(table.pairing)},
              {"d", d},
              {"z2_homology_sphere", table.z2_homology_sphere}};
}

namespace {

json optional_rational(const std::optional<Rational>& q) { return q ? rational_to_json(*q) : json(nullptr); }

std::optional<Rational> optional_rational_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j);
}

}  // namespace

json report_to_json(const ObstructionReport& report) {
  json evidence = json::array();
  for (const auto& ev : report.evidence) {
    json values = json::array();
    for (const auto& [x, v] : ev.d_values) values.push_back(json{{"elem", element_to_json(x)}, {"value", rational_to_json(v)}});
    evidence.push_back(json{{"metabolizer", subgroup_to_json(ev.metabolizer)},
                            {"d_values", values},
                            {"table_min", optional_rational(ev.table_min)},
                            {"lattice_d", optional_rational(ev.lattice_d)},
                            {"constrained_min", optional_rational(ev.constrained_min)},
                            {"finding", ev.finding},
                            {"fires", ev.fires}});
  }
  return json{{"test", report.test},
              {"verdict", std::string(verdict_name(report.verdict))},
              {"reason", report.reason},
              {"evidence", evidence},
              {"orientation_note", report.orientation_note},
              {"caveat", report.caveat ? json(*report.caveat) : json(nullptr)},
              {"embeds", report.embeds ? json(*report.embeds) : json(nullptr)}};
}

ObstructionReport report_from_json(const json& j) {
  ObstructionReport report;
  report.test = member(j, "test").get<std::string>();
  report.verdict = verdict_from_name(member(j, "verdict").get<std::string>());
  report.reason = member(j, "reason").get<std::string>();
  report.orientation_note = member(j, "orientation_note").get<std::string>();
  if (!member(j, "caveat").is_null()) report.caveat = j.at("caveat").get<std::string>();
  if (!member(j, "embeds").is_null()) report.embeds = j.at("embeds").get<bool>();
  for (const auto& e : member(j, "evidence")) {
    MetabolizerEvidence ev;
    ev.metabolizer = subgroup_from_json(member(e, "metabolizer"));
    for (const auto& v : member(e, "d_values"))
      ev.d_values.emplace_back(element_from_json(member(v, "elem")), rational_from_json(member(v, "value")));
    ev.table_min = optional_rational_from(member(e, "table_min"));
    ev.lattice_d = optional_rational_from(member(e, "lattice_d"));
    ev.constrained_min = optional_rational_from(member(e, "constrained_min"));
    ev.finding = member(e, "finding").get<std::string>();
    ev.fires = member(e, "fires").get<bool>();
    report.evidence.push_back(std::move(ev));
  }
  return report;
}

}  // namespace latcor::io
