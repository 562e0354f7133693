#include <doctest.h>

#include "latcor/io.hpp"
#include "latcor/topo.hpp"
#include "support.hpp"

using namespace latcor;
using latcor::testing::elem;
using latcor::testing::int_matrix;

namespace {

DInvariantTable z9_table(std::initializer_list<const char*> values) {
  io::json d = io::json::array();
  std::int64_t i = 0;
  for (const char* v : values) d.push_back({{"elem", {i++}}, {"value", v}});
  return io::dtable_from_json({{"orders", {9}}, {"pairing", {{"8/9"}}}, {"d", d}, {"z2_homology_sphere", true}});
}

DInvariantTable trefoil() { return z9_table({"2", "-2/9", "10/9", "0", "4/9", "4/9", "0", "10/9", "-2/9"}); }
DInvariantTable z_example() { return z9_table({"2", "-4/9", "2/9", "2", "8/9", "8/9", "2", "2/9", "-4/9"}); }

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::OracleMismatch;
}

std::vector<Rational> values_of(const MetabolizerEvidence& ev) {
  std::vector<Rational> out;
  for (const auto& [x, v] : ev.d_values) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("linking form of a filling") {
  const FillingPresentation trace = linking_form_of_filling(int_matrix({{9}}));
  CHECK(trace.linking(0, 0) == Rational(8, 9));
  const FillingPresentation neg = linking_form_of_filling(latcor::testing::negative_nine());
  CHECK(neg.lattice.orientation() == Orientation::Negated);
  CHECK(neg.group.orders() == std::vector<std::int64_t>{9});
  // both fillings bound the same Y, so the linking forms agree
  CHECK(neg.linking == trace.linking);
  CHECK(neg.group.pairing()(0, 0) == Rational(1, 9));

  const FillingPresentation four = linking_form_of_filling(int_matrix({{4}}));
  CHECK(four.linking(0, 0) == Rational(3, 4));
  CHECK(error_of([] { linking_form_of_filling(int_matrix({{1, 2}, {2, 1}})); }) == Errc::IndefiniteForm);
}

TEST_CASE("d-table validation") {
  CHECK(error_of([] { z9_table({"2", "0"}).require_complete(); }) == Errc::IncompleteTable);
  CHECK(error_of([] { z9_table({"2", "0", "0", "0", "0", "0", "0", "0", "0", "0"}); }) == Errc::ParseError);
  CHECK(error_of([] {
          io::dtable_from_json({{"orders", {9}}, {"pairing", {{"8/9"}}}, {"d", io::json::array()}, {"z2_homology_sphere", false}});
        }) == Errc::ParseError);
  CHECK(error_of([] {
          io::dtable_from_json({{"orders", {9}},
                                {"pairing", {{"8/9"}}},
                                {"d", {{{"elem", {1}}, {"value", "0"}}, {{"elem", {1}}, {"value", "1"}}}},
                                {"z2_homology_sphere", true}});
        }) == Errc::ParseError);
  CHECK(error_of([] {
          io::dtable_from_json({{"orders", {9}}, {"pairing", {{"8/9"}}}, {"d", {{{"elem", {0}}, {"value", "0.5"}}}}, {"z2_homology_sphere", true}});
        }) == Errc::ParseError);
  CHECK(error_of([] { io::dtable_from_json({{"orders", {9}}, {"pairing", {{"3/9"}}}, {"d", io::json::array()}, {"z2_homology_sphere", true}}); }) ==
        Errc::ParseError);
  CHECK(io::dtable_from_json(io::dtable_to_json(trefoil())).values == trefoil().values);
}

TEST_CASE("reversing orientation negates values and pairing") {
  const DInvariantTable r = reversed(trefoil());
  CHECK(r.pairing(0, 0) == Rational(1, 9));
  CHECK(r.values.at(elem({0})) == -2);
  CHECK(r.values.at(elem({1})) == Rational(2, 9));
  CHECK(reversed(r).values == trefoil().values);
}

TEST_CASE("rational ball obstruction") {
  const ObstructionReport rb = rb_correction_obstruction(trefoil());
  CHECK(rb.verdict == Verdict::Obstructed);
  REQUIRE(rb.evidence.size() == 1);
  CHECK(values_of(rb.evidence[0]) == std::vector<Rational>{2, 0, 0});

  const DInvariantTable zero = z9_table({"0", "-2/9", "10/9", "0", "4/9", "4/9", "0", "10/9", "-2/9"});
  CHECK(rb_correction_obstruction(zero).verdict == Verdict::Unobstructed);

  // Z/3 with a nondegenerate pairing has no metabolizer at all
  const DInvariantTable z3 = io::dtable_from_json({{"orders", {3}},
                                                   {"pairing", {{"2/3"}}},
                                                   {"d", {{{"elem", {0}}, {"value", "0"}}, {{"elem", {1}}, {"value", "1/2"}}, {{"elem", {2}}, {"value", "1/2"}}}},
                                                   {"z2_homology_sphere", true}});
  const ObstructionReport none = rb_correction_obstruction(z3);
  CHECK(none.verdict == Verdict::Obstructed);
  CHECK(none.evidence.empty());
  CHECK(definite_filling_obstruction(z3).verdict == Verdict::Unobstructed);
}

TEST_CASE("definite filling obstruction") {
  const ObstructionReport z = definite_filling_obstruction(z_example());
  CHECK(z.verdict == Verdict::Obstructed);
  REQUIRE(z.evidence.size() == 1);
  CHECK(values_of(z.evidence[0]) == std::vector<Rational>{2, 2, 2});
  CHECK(*z.evidence[0].table_min == 2);

  CHECK(definite_filling_obstruction(trefoil()).verdict == Verdict::Unobstructed);
}

TEST_CASE("even order tables are inconclusive") {
  const DInvariantTable l41 = io::dtable_from_json({{"orders", {4}},
                                                    {"pairing", {{"3/4"}}},
                                                    {"d",
                                                     {{{"elem", {0}}, {"value", "3/4"}},
                                                      {{"elem", {1}}, {"value", "0"}},
                                                      {{"elem", {2}}, {"value", "-1/4"}},
                                                      {{"elem", {3}}, {"value", "0"}}}},
                                                    {"z2_homology_sphere", false}});
  for (const auto& r : {rb_correction_obstruction(l41), definite_filling_obstruction(l41),
                        chain_check(int_matrix({{4}}), l41)}) {
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.caveat.has_value());
    REQUIRE(r.evidence.size() == 1);
    CHECK(r.evidence[0].metabolizer.elements == std::vector<GroupElement>{elem({0}), elem({2})});
  }
}

TEST_CASE("chain check") {
  const ObstructionReport ok = chain_check(int_matrix({{9}}), trefoil());
  CHECK(ok.verdict == Verdict::Unobstructed);
  CHECK(ok.embeds == true);
  REQUIRE(ok.evidence.size() == 1);
  CHECK(*ok.evidence[0].lattice_d == 0);
  CHECK(*ok.evidence[0].constrained_min == 0);
  CHECK(*ok.evidence[0].table_min == 0);

  const ObstructionReport neg = chain_check(latcor::testing::negative_nine(), trefoil());
  CHECK(neg.verdict == Verdict::Unobstructed);
  CHECK(neg.embeds == false);
  CHECK(*neg.evidence[0].lattice_d == -2);
  CHECK(*neg.evidence[0].table_min == -2);

  const ObstructionReport bad = chain_check(int_matrix({{9}}), z_example());
  CHECK(bad.verdict == Verdict::Obstructed);
  CHECK(bad.evidence[0].fires);

  CHECK(error_of([] { chain_check(int_matrix({{3}}), trefoil()); }) == Errc::GroupMismatch);
  const DInvariantTable other_pairing = io::dtable_from_json(
      {{"orders", {9}}, {"pairing", {{"1/9"}}}, {"d", io::dtable_to_json(trefoil())["d"]}, {"z2_homology_sphere", true}});
  CHECK(error_of([&] { chain_check(int_matrix({{9}}), other_pairing); }) == Errc::GroupMismatch);
}

TEST_CASE("donaldson obstruction") {
  CHECK(donaldson_obstruction(int_matrix({{9}})).verdict == Verdict::Unobstructed);
  CHECK(donaldson_obstruction(latcor::testing::negative_nine()).verdict == Verdict::Obstructed);
  CHECK(donaldson_obstruction(gram::a_root(2)).verdict == Verdict::Obstructed);
}

TEST_CASE("reports round-trip through json") {
  for (const auto& r : {rb_correction_obstruction(trefoil()), definite_filling_obstruction(z_example()),
                        chain_check(int_matrix({{9}}), trefoil()), chain_check(latcor::testing::negative_nine(), trefoil()),
                        donaldson_obstruction(latcor::testing::negative_nine())}) {
    const io::json j = io::report_to_json(r);
    CHECK(io::report_from_json(io::json::parse(j.dump())) == r);
  }
}

TEST_CASE("chain check edge cases") {
  const DInvariantTable trivial = io::dtable_from_json(
      {{"orders", io::json::array()}, {"pairing", io::json::array()}, {"d", {{{"elem", io::json::array()}, {"value", "0"}}}}, {"z2_homology_sphere", true}});
  const ObstructionReport id = chain_check(gram::standard(4), trivial);
  CHECK(id.verdict == Verdict::Unobstructed);
  REQUIRE(id.evidence.size() == 1);
  CHECK(*id.evidence[0].lattice_d == 0);
  CHECK(*id.evidence[0].constrained_min == 0);

  const ObstructionReport fives = chain_check(int_matrix({{9}}), z9_table({"5", "5", "5", "5", "5", "5", "5", "5", "5"}));
  CHECK(fives.verdict == Verdict::Obstructed);
  CHECK(fives.evidence[0].finding.find("fails") != std::string::npos);
}

TEST_CASE("orientation duality of the linking form") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix q = latcor::testing::random_lattice_gram(rng, 4, 36);
    const FillingPresentation pos = linking_form_of_filling(q);
    const FillingPresentation neg = linking_form_of_filling(IntMatrix(-q));
    CHECK(neg.group.orders() == pos.group.orders());
    for (Eigen::Index i = 0; i < pos.linking.rows(); ++i)
      for (Eigen::Index j = 0; j < pos.linking.cols(); ++j) CHECK(neg.linking(i, j) == frac(-pos.linking(i, j)));
    CHECK(metabolizers(neg.group) == metabolizers(pos.group));
  }
}

TEST_CASE("metabolizers depend only on the pairing table") {
  std::mt19937 rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix q = latcor::testing::random_lattice_gram(rng, 4, 36);
    const FillingPresentation a = linking_form_of_filling(q);
    const DiscGroup abstract = DiscGroup::abstract(a.group.orders(), a.group.pairing());
    CHECK(metabolizers(abstract) == metabolizers(a.group));
  }
}

TEST_CASE("a firing filling obstruction makes every chain inconsistent") {
  std::mt19937 rng(73);
  const std::vector<IntMatrix> fillings = {int_matrix({{9}}), gram::diagonal({1, 9}), int_matrix({{2, 1}, {1, 5}}),
                                           gram::diagonal({1, 1, 9})};
  int fired = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::string> text;
    for (int i = 0; i < 9; ++i) text.push_back(std::to_string(latcor::testing::uniform(rng, -1, 3)));
    io::json d = io::json::array();
    for (std::int64_t i = 0; i < 9; ++i) d.push_back({{"elem", {i}}, {"value", text[static_cast<std::size_t>(i)]}});
    const DInvariantTable t =
        io::dtable_from_json({{"orders", {9}}, {"pairing", {{"8/9"}}}, {"d", d}, {"z2_homology_sphere", true}});
    if (definite_filling_obstruction(t).verdict != Verdict::Obstructed) continue;
    ++fired;
    for (const auto& q : fillings) {
      ObstructionReport r;
      try {
        r = chain_check(q, t);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::GroupMismatch);
        continue;
      }
      CHECK(r.verdict == Verdict::Obstructed);
    }
  }
  CHECK(fired > 5);
}
