#pragma once

// Rational homology spheres bounding definite fillings: linking pairings,
// d-invariant tables, and the obstructions built from them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latcor/corrterm.hpp"

namespace latcor {

/// The boundary of a definite filling X with H_1(X) = 0, presented by Q_X.
struct FillingPresentation {
  /// Positive definite lattice (Q_X, or -Q_X for a negative definite X).
  Lattice lattice;
  /// H_1(Y) = L*/L; its pairing is the discriminant form of `lattice`.
  DiscGroup group;
  /// Linking pairing of Y = boundary of X in the original orientation,
  /// against the generators of `group`.
  RatMatrix linking;
};

/// Throws IndefiniteForm, SingularForm or NotSymmetric.
FillingPresentation linking_form_of_filling(const IntMatrix& q_x);

/// Heegaard Floer correction terms of Y keyed by PD(c_1) in H_1(Y).
struct DInvariantTable {
  std::vector<std::int64_t> orders;
  RatMatrix pairing;
  std::map<GroupElement, Rational> values;
  bool z2_homology_sphere = true;

  /// The abstract group with its linking pairing (validated).
  DiscGroup group() const;
  /// Throws IncompleteTable unless every element has exactly one value.
  void require_complete() const;
};

/// The table of -Y: values negated, pairing negated.
DInvariantTable reversed(const DInvariantTable& table);

enum class Verdict { Obstructed, Unobstructed, Inconclusive };

std::string_view verdict_name(Verdict v);
Verdict verdict_from_name(std::string_view name);

struct MetabolizerEvidence {
  Subgroup metabolizer;
  /// Table values on the metabolizer, in element order.
  std::vector<std::pair<GroupElement, Rational>> d_values;
  std::optional<Rational> table_min;
  /// d_{U(M)} when a filling is supplied.
  std::optional<Rational> lattice_d;
  /// min (chi^2 - n)/4 over Char(L) projecting into M.
  std::optional<Rational> constrained_min;
  /// Which condition held or failed for this metabolizer.
  std::string finding;
  bool fires = false;

  friend bool operator==(const MetabolizerEvidence&, const MetabolizerEvidence&) = default;
};

struct ObstructionReport {
  std::string test;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<MetabolizerEvidence> evidence;
  std::string orientation_note;
  std::optional<std::string> caveat;
  /// Whether the filling lattice embeds in the standard lattice, when known.
  std::optional<bool> embeds;

  friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

/// Obstructed iff Q_X does not embed in the standard lattice of its rank.
ObstructionReport donaldson_obstruction(const IntMatrix& q_x, const CorrOptions& options = {});

/// Unobstructed iff some metabolizer carries d = 0 throughout.
ObstructionReport rb_correction_obstruction(const DInvariantTable& table, std::size_t max_group = kDefaultMaxGroup);

/// Obstructed iff some metabolizer carries d > 0 throughout.
ObstructionReport definite_filling_obstruction(const DInvariantTable& table,
                                               std::size_t max_group = kDefaultMaxGroup);

/// Checks 0 >= d_{U(M)} >= constrained min >= min of the table over M for
/// every metabolizer. Throws GroupMismatch when the table's group or
/// pairing differs from the boundary of Q_X.
ObstructionReport chain_check(const IntMatrix& q_x, const DInvariantTable& table, const CorrOptions& options = {});

}  // namespace latcor
