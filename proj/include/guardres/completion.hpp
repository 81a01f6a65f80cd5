#pragma once

// Defining equations built from supports, the purely negative transform and
// equivalence of programs by their stable models.

#include "guardres/core.hpp"
#include "guardres/gl_engine.hpp"
#include "guardres/guarded.hpp"
#include "guardres/sat.hpp"

#include <string>
#include <vector>

namespace guardres {

/// One defining equation:
///   Negative   -p                       (no support)
///   Positive   p                        (the empty support)
///   Equiv      p <-> -S1 | -S2 | ...    (minimal supports S1..Sk)
struct Equation {
	enum class Shape { Positive, Negative, Equiv };

	Atom                 atom;
	Shape                shape = Shape::Negative;
	std::vector<AtomSet> supports;

	bool satisfied_by(const Interpretation& m) const;
	friend bool operator==(const Equation&, const Equation&) = default;
};

struct CompletionTheory {
	std::shared_ptr<const AtomTable> atoms;
	std::vector<Equation>            equations; // indexed by atom id

	bool satisfied_by(const Interpretation& m) const;
};

Equation make_equation(Atom atom, std::vector<AtomSet> minimal_supports);

CompletionTheory build_completion(const Program& program, const SupportLimits& limits = {});
CompletionTheory build_completion(const Program& program, const SupportTable& supports);

/// CNF with one auxiliary variable per disjunct of each Equiv equation
/// (aux <-> conjunction of the negated guard). The auxiliaries are defined
/// functionally, so models project one-to-one onto the original atoms,
/// which keep their ids.
CnfTheory completion_to_cnf(const CompletionTheory& theory);

/// Models in bitmask order. Throws ResourceError above `cap` atoms.
std::vector<Interpretation> models_of_completion(const CompletionTheory& theory,
                                                 std::size_t cap = kDefaultEnumerationCap);

/// `p <-> -q | -r`, `t.`, `-r.`; conjunctions inside a disjunct use `&`.
std::string render_equation(const Equation& eq, const AtomTable& table);
std::string render_completion(const CompletionTheory& theory);

/// For each atom and each minimal support S: the clause p :- not S.
/// The result shares the input's atom table.
Program dung_transform(const Program& program, const SupportLimits& limits = {});

/// Same stable models, compared by atom names so the tables need not agree.
bool equivalent(const Program& a, const Program& b, std::size_t cap = kDefaultEnumerationCap);

} // namespace guardres
