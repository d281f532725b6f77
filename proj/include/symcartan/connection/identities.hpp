#pragma once

#include <string>
#include <vector>

#include "symcartan/connection/connection.hpp"

namespace symcartan {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct IdentityReport {
  std::vector<Check> checks;
  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
};

// 2 sym (nabla - nabla'): sigma(X, Y) = (nabla - nabla')(X, Y) + (nabla - nabla')(Y, X).
VecSymField variation_sigma(const Connection& nabla, const Connection& nabla2);

/// Compares nabla'^s, L'^s and the primed bracket against the unprimed
/// operators corrected by sigma.
IdentityReport variation_check(const Connection& nabla, const Connection& nabla2, const std::vector<SymField>& forms,
                               const std::vector<VecSymField>& vectors);

// Z -> 2(nabla_{nabla_Z X} Y - nabla_{nabla_Z Y} X - R(X, Y) Z).
VecSymField commutator_endomorphism(const Connection& nabla, const VecSymField& x, const VecSymField& y);

/// The unconditional relations plus both commutator identities, each side
/// computed independently.  Throws ComputationError on torsion.
IdentityReport commutator_identities(const Connection& nabla, const VecSymField& x, const VecSymField& y,
                                     const std::vector<SymField>& forms);

// Generator functions, f dx^i, and products of coordinate 1-forms up to
// degree 3.  Derivations agreeing on this family agree everywhere.
std::vector<SymField> spanning_family(const ChartPtr& chart);
// [nabla^s, L^s_X] phi = 0 for every phi in forms.
bool sym_lie_commutes(const Connection& nabla, const VecSymField& x, const std::vector<SymField>& forms);

// Solves g(X, .) = alpha; g must be nondegenerate.
VecSymField raise_index(const SymField& g, const SymField& alpha);

/// True iff nabla is torsion free and nabla g = 0.  When true, the identity
/// nabla^s alpha = L_{g^-1 alpha} g is asserted on the given 1-forms and a
/// failure throws ComputationError.
bool levi_civita_check(const Connection& nabla, const SymField& g, const std::vector<SymField>& forms = {});

}  // namespace symcartan
