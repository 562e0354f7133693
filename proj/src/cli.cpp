#include "latcor/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "latcor/io.hpp"
#include "latcor/oracle.hpp"

namespace latcor::cli {

namespace {

using io::json;

struct RunConfig {
  std::string file;
  std::string dtable;
  std::string filling;
  std::string format = "text";
  bool oracle = false;
  std::size_t max_group = kDefaultMaxGroup;
  unsigned threads = 1;

  CorrOptions corr() const { return CorrOptions{max_group, threads}; }
};

struct Outcome {
  json doc;
  std::string text;
  int code = kOk;
};

std::string element_text(const GroupElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(x.coeffs[i]);
  return s + ")";
}

std::string subgroup_text(const Subgroup& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.elements.size(); ++i) s += (i ? ", " : "") + element_text(h.elements[i]);
  return s + "}";
}

std::string vector_text(const DualVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.coords.size(); ++i) s += (i ? ", " : "") + to_string(v.coords(i));
  return s + "]";
}

std::string matrix_text(const RatMatrix& m, const std::string& indent) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? "  " : "") + to_string(m(i, j));
    s += "\n";
  }
  return s;
}

std::string orders_text(const std::vector<std::int64_t>& orders) {
  if (orders.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? " + " : "") + ("Z/" + std::to_string(orders[i]));
  return s;
}

const char* orientation_text(Orientation o) { return o == Orientation::Negated ? "negated" : "as-given"; }

json orders_json(const std::vector<std::int64_t>& orders) { return json(orders); }

// ----------------------------------------------------------------------------
// lattice subcommands

Outcome lattice_info(const RunConfig& cfg) {
  const Lattice lattice = Lattice::make(io::load_gram(cfg.file));
  const DiscGroup group = disc_group(lattice);
  const bool negated = lattice.orientation() == Orientation::Negated;

  Outcome out;
  json generators = json::array();
  for (const auto& g : group.generators()) generators.push_back(io::dual_vector_to_json(g));
  out.doc = json{{"rank", lattice.rank()},
                 {"definiteness", negated ? "negative definite" : "positive definite"},
                 {"orientation", orientation_text(lattice.orientation())},
                 {"discriminant", discriminant(lattice).str()},
                 {"orders", orders_json(group.orders())},
                 {"pairing", io::rat_matrix_to_json(group.pairing())},
                 {"generators", generators}};
  std::ostringstream s;
  s << "rank:          " << lattice.rank() << "\n"
    << "definiteness:  " << (negated ? "negative definite" : "positive definite") << "\n"
    << "orientation:   " << orientation_text(lattice.orientation()) << "\n"
    << "discriminant:  " << discriminant(lattice) << "\n"
    << "group:         " << orders_text(group.orders()) << "\n";
  if (group.rank() > 0) {
    s << "pairing:\n" << matrix_text(group.pairing(), "  ");
    s << "generators:\n";
    for (const auto& g : group.generators()) s << "  " << vector_text(g) << "\n";
  }
  out.text = s.str();
  return out;
}

// Metabolizers by the independent oracle: order filter plus all-pairs isotropy.
std::vector<Subgroup> oracle_metabolizers(const DiscGroup& group) {
  const auto root = exact_sqrt(group.order());
  std::vector<Subgroup> out;
  if (!root) return out;
  for (auto& h : oracle::brute_subgroups(group)) {
    if (Integer(h.size()) != *root) continue;
    bool isotropic = true;
    for (const auto& x : h.elements)
      for (const auto& y : h.elements)
        if (isotropic && lambda(group, x, y) != 0) isotropic = false;
    if (isotropic) out.push_back(std::move(h));
  }
  return out;
}

json oracle_status(const std::string& status) { return json{{"status", status}}; }

Outcome lattice_metabolizers(const RunConfig& cfg) {
  const Lattice lattice = Lattice::make(io::load_gram(cfg.file));
  const DiscGroup group = disc_group(lattice);
  const std::vector<Subgroup> mets = metabolizers(group, cfg.max_group);

  Outcome out;
  json list = json::array();
  for (const auto& m : mets) list.push_back(io::subgroup_to_json(m));
  out.doc = json{{"orders", orders_json(group.orders())}, {"metabolizers", list}};
  std::ostringstream s;
  s << "group: " << orders_text(group.orders()) << "\n";
  s << "metabolizers: " << mets.size() << "\n";
  for (const auto& m : mets) s << "  " << subgroup_text(m) << "\n";

  if (cfg.oracle) {
    try {
      if (oracle_metabolizers(group) != mets)
        throw Error(Errc::OracleMismatch, "metabolizers disagree with the brute-force subgroup oracle");
      out.doc["oracle"] = oracle_status("agree");
      s << "oracle: agree\n";
    } catch (const Error& e) {
      if (e.code() != Errc::SearchTooLarge) throw;
      out.doc["oracle"] = oracle_status(std::string("skipped: ") + e.what());
      s << "oracle: skipped (" << e.what() << ")\n";
    }
  }
  out.text = s.str();
  return out;
}

json dset_json(const DSet& d) {
  json entries = json::array();
  for (const auto& e : d.entries)
    entries.push_back(json{{"metabolizer", io::subgroup_to_json(e.metabolizer)},
                           {"d", io::rational_to_json(e.d)},
                           {"witness", io::dual_vector_to_json(e.witness)},
                           {"overlattice_index", e.overlattice.index.str()},
                           {"overlattice_basis", io::rat_matrix_to_json(e.overlattice.basis)}});
  return entries;
}

std::string dset_text(const DSet& d) {
  std::ostringstream s;
  s << "D = {";
  for (std::size_t i = 0; i < d.entries.size(); ++i) s << (i ? ", " : "") << to_string(d.entries[i].d);
  s << "}\n";
  for (const auto& e : d.entries)
    s << "  M = " << subgroup_text(e.metabolizer) << "  d_U(M) = " << to_string(e.d)
      << "  witness = " << vector_text(e.witness) << "\n";
  return s.str();
}

Outcome lattice_dset(const RunConfig& cfg) {
  const Lattice lattice = Lattice::make(io::load_gram(cfg.file));
  const DSet d = d_set(lattice, cfg.corr());
  Outcome out;
  out.doc = json{{"orientation", orientation_text(lattice.orientation())},
                 {"discriminant", discriminant(lattice).str()},
                 {"entries", dset_json(d)},
                 {"contains_zero", d.contains_zero}};
  out.text = "orientation: " + std::string(orientation_text(lattice.orientation())) + "\n" +
             "discriminant: " + discriminant(lattice).str() + "\n" + dset_text(d) +
             "contains 0: " + (d.contains_zero ? "yes" : "no") + "\n";
  return out;
}

Outcome lattice_embed_check(const RunConfig& cfg) {
  const Lattice lattice = Lattice::make(io::load_gram(cfg.file));
  const DSet d = d_set(lattice, cfg.corr());
  const bool negated = lattice.orientation() == Orientation::Negated;
  const std::string target = negated ? "standard negative definite lattice" : "standard lattice";

  Outcome out;
  out.code = d.contains_zero ? kOk : kNegative;
  out.doc = json{{"embeds", d.contains_zero},
                 {"orientation", orientation_text(lattice.orientation())},
                 {"rank", lattice.rank()},
                 {"discriminant", discriminant(lattice).str()},
                 {"entries", dset_json(d)}};
  std::ostringstream s;
  s << "orientation: " << orientation_text(lattice.orientation()) << "\n"
    << "discriminant: " << discriminant(lattice) << "\n"
    << dset_text(d)
    << "verdict: " << (d.contains_zero ? "embeds in the " : "does not embed in the ") << target << " of rank "
    << lattice.rank() << "\n";

  if (cfg.oracle) {
    try {
      const bool brute = oracle::brute_embed(lattice).embeds;
      if (brute != d.contains_zero)
        throw Error(Errc::OracleMismatch, "embedding verdict disagrees with the brute-force embedding oracle");
      out.doc["oracle"] = oracle_status("agree");
      s << "oracle: agree\n";
    } catch (const Error& e) {
      if (e.code() != Errc::SearchTooLarge) throw;
      out.doc["oracle"] = oracle_status(std::string("skipped: ") + e.what());
      s << "oracle: skipped (" << e.what() << ")\n";
    }
  }
  out.text = s.str();
  return out;
}

// Cross-checks an optimized minimum against box enumeration with the same bound.
void check_char_min(const Lattice& u, const Integer& minimum) {
  Integer brute;
  try {
    brute = oracle::brute_char_min(u, minimum);
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidArgument)
      throw Error(Errc::OracleMismatch, "no characteristic vector reaches the reported minimum");
    throw;
  }
  if (brute != minimum) throw Error(Errc::OracleMismatch, "characteristic minimum disagrees with box enumeration");
}

Outcome lattice_dinv(const RunConfig& cfg) {
  const Lattice lattice = Lattice::make(io::load_gram(cfg.file));
  if (!is_unimodular(lattice))
    throw Error(Errc::InvalidArgument, "dinv needs a unimodular lattice (discriminant " +
                                           discriminant(lattice).str() + ")");
  const MinimizationResult m = min_char_square(lattice, cfg.threads);
  const Rational d = Rational(m.minimum - lattice.rank()) / 4;

  Outcome out;
  out.doc = json{{"rank", lattice.rank()},
                 {"orientation", orientation_text(lattice.orientation())},
                 {"min_char_square", m.minimum.str()},
                 {"d", io::rational_to_json(d)},
                 {"witness", io::dual_vector_to_json(m.witness)}};
  std::ostringstream s;
  s << "orientation: " << orientation_text(lattice.orientation()) << "\n"
    << "min chi^2: " << m.minimum << "\n"
    << "d: " << to_string(d) << "\n"
    << "witness: " << vector_text(m.witness) << "\n";
  if (cfg.oracle) {
    try {
      check_char_min(lattice, m.minimum);
      out.doc["oracle"] = oracle_status("agree");
      s << "oracle: agree\n";
    } catch (const Error& e) {
      if (e.code() != Errc::SearchTooLarge) throw;
      out.doc["oracle"] = oracle_status(std::string("skipped: ") + e.what());
      s << "oracle: skipped (" << e.what() << ")\n";
    }
  }
  out.text = s.str();
  return out;
}

// ----------------------------------------------------------------------------
// topo subcommands

Outcome topo_linking_form(const RunConfig& cfg) {
  const FillingPresentation f = linking_form_of_filling(io::load_gram(cfg.file));
  Outcome out;
  json generators = json::array();
  for (const auto& g : f.group.generators()) generators.push_back(io::dual_vector_to_json(g));
  out.doc = json{{"orientation", orientation_text(f.lattice.orientation())},
                 {"orders", orders_json(f.group.orders())},
                 {"linking", io::rat_matrix_to_json(f.linking)},
                 {"generators", generators}};
  std::ostringstream s;
  s << "orientation: " << orientation_text(f.lattice.orientation()) << "\n"
    << "H_1(Y): " << orders_text(f.group.orders()) << "\n";
  if (f.group.rank() > 0) s << "linking pairing:\n" << matrix_text(f.linking, "  ");
  out.text = s.str();
  return out;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Unobstructed: return kOk;
    case Verdict::Obstructed: return kNegative;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kError;
}

std::string report_text(const ObstructionReport& r) {
  std::ostringstream s;
  s << "test: " << r.test << "\n"
    << "verdict: " << verdict_name(r.verdict) << "\n"
    << "reason: " << r.reason << "\n"
    << "orientation: " << r.orientation_note << "\n";
  if (r.embeds) s << "embeds in standard lattice: " << (*r.embeds ? "yes" : "no") << "\n";
  if (r.caveat) s << "caveat: " << *r.caveat << "\n";
  for (const auto& ev : r.evidence) {
    s << "  M = " << subgroup_text(ev.metabolizer) << "\n";
    if (!ev.d_values.empty()) {
      s << "    d on M: {";
      for (std::size_t i = 0; i < ev.d_values.size(); ++i) s << (i ? ", " : "") << to_string(ev.d_values[i].second);
      s << "}\n";
    }
    if (ev.lattice_d) s << "    d_U(M): " << to_string(*ev.lattice_d) << "\n";
    if (ev.constrained_min) s << "    constrained min: " << to_string(*ev.constrained_min) << "\n";
    s << "    " << ev.finding << "\n";
  }
  return s.str();
}

Outcome from_report(const ObstructionReport& r) { return Outcome{io::report_to_json(r), report_text(r), verdict_code(r.verdict)}; }

Outcome topo_rb(const RunConfig& cfg) {
  return from_report(rb_correction_obstruction(io::load_dtable(cfg.dtable), cfg.max_group));
}

Outcome topo_filling(const RunConfig& cfg) {
  return from_report(definite_filling_obstruction(io::load_dtable(cfg.dtable), cfg.max_group));
}

Outcome topo_chain(const RunConfig& cfg) {
  const IntMatrix q_x = io::load_gram(cfg.filling);
  const ObstructionReport report = chain_check(q_x, io::load_dtable(cfg.dtable), cfg.corr());
  Outcome out = from_report(report);
  if (cfg.oracle) {
    try {
      const Lattice lattice = Lattice::make(q_x);
      const DiscGroup group = disc_group(lattice);
      for (const auto& ev : report.evidence) {
        const Lattice u = as_lattice(overlattice(lattice, group, ev.metabolizer));
        check_char_min(u, numerator(*ev.lattice_d * 4) + u.rank());
      }
      out.doc["oracle"] = oracle_status("agree");
      out.text += "oracle: agree\n";
    } catch (const Error& e) {
      if (e.code() != Errc::SearchTooLarge) throw;
      out.doc["oracle"] = oracle_status(std::string("skipped: ") + e.what());
      out.text += "oracle: skipped (" + std::string(e.what()) + ")\n";
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Lattice embeddings into standard lattices via correction terms", "latcor"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--oracle", cfg.oracle, "Cross-check against brute-force oracles; fail on disagreement");
  app.add_option("--max-group", cfg.max_group, "Cap on discriminant group size for enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads for characteristic enumeration")
      ->check(CLI::PositiveNumber);

  std::function<Outcome(const RunConfig&)> handler;
  auto bind = [&](CLI::App* sub, Outcome (*fn)(const RunConfig&)) {
    sub->fallthrough();
    sub->callback([&handler, fn] { handler = fn; });
  };

  CLI::App* lattice = app.add_subcommand("lattice", "Lattice computations");
  lattice->require_subcommand(1);
  lattice->fallthrough();
  struct LatticeCommand {
    const char* name;
    const char* help;
    Outcome (*fn)(const RunConfig&);
  };
  const LatticeCommand lattice_commands[] = {
      {"info", "Rank, definiteness, discriminant group and pairing", lattice_info},
      {"metabolizers", "Metabolizers of the discriminant form", lattice_metabolizers},
      {"dset", "Correction terms of the unimodular overlattices", lattice_dset},
      {"embed-check", "Embedding into the standard lattice (exit 0 embeds, 2 does not)", lattice_embed_check},
      {"dinv", "Correction term of a unimodular lattice", lattice_dinv},
  };
  for (const auto& c : lattice_commands) {
    CLI::App* sub = lattice->add_subcommand(c.name, c.help);
    sub->add_option("file", cfg.file, "Lattice JSON file")->required()->check(CLI::ExistingFile);
    bind(sub, c.fn);
  }

  CLI::App* topo = app.add_subcommand("topo", "Rational homology sphere obstructions");
  topo->require_subcommand(1);
  topo->fallthrough();
  CLI::App* linking = topo->add_subcommand("linking-form", "Boundary group and linking pairing of a filling");
  linking->add_option("file", cfg.file, "Filling Gram JSON file")->required()->check(CLI::ExistingFile);
  bind(linking, topo_linking_form);
  CLI::App* rb = topo->add_subcommand("rb-obstruction", "Correction-term obstruction to bounding a rational ball");
  rb->add_option("--dtable", cfg.dtable, "d-invariant table JSON file")->required()->check(CLI::ExistingFile);
  bind(rb, topo_rb);
  CLI::App* filling = topo->add_subcommand("filling-obstruction", "Obstruction to a positive definite filling");
  filling->add_option("--dtable", cfg.dtable, "d-invariant table JSON file")->required()->check(CLI::ExistingFile);
  bind(filling, topo_filling);
  CLI::App* chain = topo->add_subcommand("chain", "Full inequality chain for a filling and its boundary table");
  chain->add_option("--filling", cfg.filling, "Filling Gram JSON file")->required()->check(CLI::ExistingFile);
  chain->add_option("--dtable", cfg.dtable, "d-invariant table JSON file")->required()->check(CLI::ExistingFile);
  bind(chain, topo_chain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << code_name(Errc::InvalidArgument) << ": " << message << "\n";
    return kError;
  }

  try {
    const Outcome outcome = handler(cfg);
    if (cfg.format == "json")
      out << outcome.doc.dump(2) << "\n";
    else
      out << outcome.text;
    return outcome.code;
  } catch (const Error& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << code_name(e.code()) << ": " << message << "\n";
    return kError;
  }
}

}  // namespace latcor::cli
