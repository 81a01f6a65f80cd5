#pragma once

// Reference semantics: Gelfond-Lifschitz reduct, least models, stability,
// supportedness, levels and tightness. Everything else in the library is
// checked against these routines.

#include "guardres/core.hpp"

#include <optional>
#include <vector>

namespace guardres {

struct HornClause {
	Atom              head;
	std::vector<Atom> body; // ascending atom id
};

struct HornProgram {
	std::shared_ptr<const AtomTable> atoms;
	std::vector<HornClause>          clauses;

	std::size_t atom_count() const noexcept { return atoms ? atoms->size() : 0; }
};

/// Partial map from atoms to natural numbers.
class RankFunction {
public:
	RankFunction() = default;
	explicit RankFunction(std::size_t atom_count) : ranks_(atom_count) {}

	void set(Atom a, unsigned rank);
	std::optional<unsigned> operator[](Atom a) const;
	bool defined(Atom a) const { return (*this)[a].has_value(); }
	AtomSet domain() const;
	std::size_t atom_count() const noexcept { return ranks_.size(); }

	friend bool operator==(const RankFunction&, const RankFunction&) = default;

private:
	std::vector<std::optional<unsigned>> ranks_;
};

HornProgram gl_reduct(const Program& program, const Interpretation& m);

/// Least model by counter-based forward chaining; linear in the total body size.
Interpretation least_model(const HornProgram& horn);

/// Least model plus, for every derived atom, the least n with the atom in
/// T^{n+1}(empty), i.e. facts get rank 0.
RankFunction least_model_ranks(const HornProgram& horn);

Interpretation gl_operator(const Program& program, const Interpretation& m);
bool is_stable(const Program& program, const Interpretation& m);

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// All stable models in bitmask order, by exhaustive search over subsets.
/// Throws ResourceError if the program has more than `cap` atoms.
std::vector<Interpretation> brute_force_stable(const Program& program,
                                               std::size_t cap = kDefaultEnumerationCap);

bool is_supported(const Program& program, const Interpretation& m);

/// Checks that `m` is a model of `program` and `ranks` (defined exactly on m)
/// witnesses that every member has a clause with satisfied body whose
/// positive atoms all rank strictly lower.
bool verify_levels(const Program& program, const Interpretation& m, const RankFunction& ranks);

/// A levels certificate for `m`, or nullopt if `m` has no levels.
///
/// Ranks are built from clauses applicable in `m` (head in m, body true in
/// m) by level-wise propagation, then re-checked with verify_levels.
std::optional<RankFunction> compute_levels(const Program& program, const Interpretation& m);

/// Ranks from the positive dependency graph (longest path from a source),
/// or nullopt if the graph has a cycle.
std::optional<RankFunction> is_tight(const Program& program);

enum class TightReading {
	/// Only clauses with head in M and body satisfied by M contribute edges.
	Restricted,
	/// Every clause with head in M contributes; a positive body atom outside M
	/// has no rank and makes the program non-tight on M.
	Literal,
};

std::optional<RankFunction> is_tight_on(const Program& program, const Interpretation& m,
                                        TightReading reading = TightReading::Restricted);

} // namespace guardres
