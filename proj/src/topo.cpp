#include "latcor/topo.hpp"

#include <algorithm>

namespace latcor {

namespace {

constexpr const char* kEvenOrderCaveat =
    "H_1(Y) has even order, so PD(c_1) is not injective on spin^c structures and a table keyed by "
    "group elements cannot represent every correction term; verdict withheld";

RatMatrix negate_mod_one(const RatMatrix& p) {
  RatMatrix out(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) out(i, j) = frac(-p(i, j));
  return out;
}

std::string orientation_note(Orientation o) {
  return o == Orientation::Negated
             ? "Q_X is negative definite; computed with -Q_X, i.e. the positive definite filling -X of -Y"
             : "Q_X is positive definite";
}

MetabolizerEvidence table_evidence(const DInvariantTable& table, const Subgroup& m) {
  MetabolizerEvidence ev;
  ev.metabolizer = m;
  for (const auto& x : m.elements) {
    const Rational& v = table.values.at(x);
    ev.d_values.emplace_back(x, v);
    if (!ev.table_min || v < *ev.table_min) ev.table_min = v;
  }
  return ev;
}

}  // namespace

FillingPresentation linking_form_of_filling(const IntMatrix& q_x) {
  Lattice lattice = Lattice::make(q_x);
  DiscGroup group = disc_group(lattice);
  RatMatrix linking =
      lattice.orientation() == Orientation::Negated ? negate_mod_one(group.pairing()) : group.pairing();
  return FillingPresentation{std::move(lattice), std::move(group), std::move(linking)};
}

DiscGroup DInvariantTable::group() const { return DiscGroup::abstract(orders, pairing); }

void DInvariantTable::require_complete() const {
  const DiscGroup g = group();
  for (const auto& [x, v] : values)
    if (!g.is_valid(x)) throw Error(Errc::IncompleteTable, "table key is not an element of the group");
  if (Integer(values.size()) != g.order())
    throw Error(Errc::IncompleteTable, "table has " + std::to_string(values.size()) + " values for a group of order " +
                                           g.order().str());
}

DInvariantTable reversed(const DInvariantTable& table) {
  DInvariantTable out = table;
  out.pairing = negate_mod_one(table.pairing);
  for (auto& [x, v] : out.values) v = -v;
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "obstructed";
    case Verdict::Unobstructed: return "unobstructed";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_name(std::string_view name) {
  if (name == "obstructed") return Verdict::Obstructed;
  if (name == "unobstructed") return Verdict::Unobstructed;
  if (name == "inconclusive") return Verdict::Inconclusive;
  throw Error(Errc::ParseError, "unknown verdict '" + std::string(name) + "'");
}

ObstructionReport donaldson_obstruction(const IntMatrix& q_x, const CorrOptions& options) {
  const Lattice lattice = Lattice::make(q_x);
  const DSet d = d_set(lattice, options);

  ObstructionReport report;
  report.test = "donaldson";
  report.orientation_note = orientation_note(lattice.orientation());
  for (const auto& entry : d.entries) {
    MetabolizerEvidence ev;
    ev.metabolizer = entry.metabolizer;
    ev.lattice_d = entry.d;
    ev.fires = entry.d != 0;
    ev.finding = entry.d == 0 ? "d_U(M) = 0: U(M) is standard" : "d_U(M) = " + to_string(entry.d) + " < 0";
    report.evidence.push_back(std::move(ev));
  }
  report.embeds = d.contains_zero;
  report.verdict = d.contains_zero ? Verdict::Unobstructed : Verdict::Obstructed;
  if (d.entries.empty())
    report.reason = "no metabolizer exists, so the lattice does not embed in the standard lattice";
  else if (d.contains_zero)
    report.reason = "0 is in D: the lattice embeds in the standard lattice of its rank";
  else
    report.reason = "0 is not in D: the lattice does not embed in the standard lattice of its rank";
  return report;
}

ObstructionReport rb_correction_obstruction(const DInvariantTable& table, std::size_t max_group) {
  table.require_complete();
  const DiscGroup group = table.group();

  ObstructionReport report;
  report.test = "rb-correction";
  report.orientation_note = "as given";
  bool vanishing = false;
  for (const auto& m : metabolizers(group, max_group)) {
    MetabolizerEvidence ev = table_evidence(table, m);
    const bool all_zero =
        std::all_of(ev.d_values.begin(), ev.d_values.end(), [](const auto& p) { return p.second == 0; });
    ev.fires = !all_zero;
    ev.finding = all_zero ? "d vanishes on M" : "d is nonzero somewhere on M";
    vanishing = vanishing || all_zero;
    report.evidence.push_back(std::move(ev));
  }

  if (report.evidence.empty()) {
    report.verdict = Verdict::Obstructed;
    report.reason = "no metabolizer exists";
  } else if (vanishing) {
    report.verdict = Verdict::Unobstructed;
    report.reason = "some metabolizer carries vanishing correction terms";
  } else {
    report.verdict = Verdict::Obstructed;
    report.reason = "every metabolizer carries a nonzero correction term";
  }
  if (!table.z2_homology_sphere) {
    report.caveat = kEvenOrderCaveat;
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

ObstructionReport definite_filling_obstruction(const DInvariantTable& table, std::size_t max_group) {
  table.require_complete();
  const DiscGroup group = table.group();

  ObstructionReport report;
  report.test = "definite-filling";
  report.orientation_note = "as given";
  bool fires = false;
  for (const auto& m : metabolizers(group, max_group)) {
    MetabolizerEvidence ev = table_evidence(table, m);
    ev.fires = *ev.table_min > 0;
    ev.finding = ev.fires ? "d > 0 on all of M" : "min of d over M is " + to_string(*ev.table_min);
    fires = fires || ev.fires;
    report.evidence.push_back(std::move(ev));
  }

  if (fires) {
    report.verdict = Verdict::Obstructed;
    report.reason = "a metabolizer carries strictly positive correction terms: Y bounds no positive definite X "
                    "with H_1(X) = 0";
  } else {
    report.verdict = Verdict::Unobstructed;
    report.reason = report.evidence.empty() ? "no metabolizer exists" : "no metabolizer is strictly positive";
  }
  if (!table.z2_homology_sphere) {
    report.caveat = kEvenOrderCaveat;
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

ObstructionReport chain_check(const IntMatrix& q_x, const DInvariantTable& table, const CorrOptions& options) {
  table.require_complete();
  const FillingPresentation filling = linking_form_of_filling(q_x);
  if (table.orders != filling.group.orders() || table.pairing != filling.linking)
    throw Error(Errc::GroupMismatch, "d-table group or pairing differs from the boundary of Q_X");

  const bool negated = filling.lattice.orientation() == Orientation::Negated;
  const DInvariantTable working = negated ? reversed(table) : table;

  ObstructionReport report;
  report.test = "chain";
  report.orientation_note = orientation_note(filling.lattice.orientation());
  if (negated) report.orientation_note += "; table values negated since d(-Y,t) = -d(Y,t)";

  bool consistent = true;
  bool embeds = false;
  bool forced_by_table = false;
  for (const auto& m : metabolizers(filling.group, options.max_group)) {
    MetabolizerEvidence ev = table_evidence(working, m);
    const OverLattice over = overlattice(filling.lattice, filling.group, m);
    const Rational d_u = d_lattice(as_lattice(over), options.threads);
    const Rational c_min = constrained_min(filling.lattice, filling.group, m, options.threads).value;
    ev.lattice_d = d_u;
    ev.constrained_min = c_min;
    if (d_u == 0) embeds = true;

    const Rational& t_min = *ev.table_min;
    const std::string chain = "0 >= " + to_string(d_u) + " >= " + to_string(c_min) + " >= " + to_string(t_min);
    if (d_u > 0) {
      ev.finding = chain + " fails: d_U(M) > 0";
    } else if (d_u < c_min) {
      ev.finding = chain + " fails: d_U(M) below the constrained minimum";
    } else if (c_min < t_min) {
      ev.finding = chain + " fails: a characteristic covector violates the correction-term bound";
    } else {
      ev.finding = chain + " holds";
      if (t_min >= 0) {
        ev.finding += "; table min >= 0 forces d_U(M) = 0";
        forced_by_table = true;
      }
    }
    ev.fires = ev.finding.find("fails") != std::string::npos;
    consistent = consistent && !ev.fires;
    report.evidence.push_back(std::move(ev));
  }

  report.embeds = embeds;
  if (!consistent) {
    report.verdict = Verdict::Obstructed;
    report.reason = "inconsistent: the d-table cannot belong to the boundary of this filling";
  } else {
    report.verdict = Verdict::Unobstructed;
    report.reason = forced_by_table ? "chain consistent; a metabolizer with nonnegative d forces the lattice to "
                                      "embed in the standard lattice"
                                    : "chain consistent on every metabolizer";
  }
  if (!table.z2_homology_sphere) {
    report.caveat = kEvenOrderCaveat;
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

}  // namespace latcor
