#pragma once

// Propositional layer: CNF theories over an atom table, a plain DPLL solver
// and DIMACS import/export.

#include "guardres/core.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace guardres {

struct Literal {
	Atom atom;
	bool positive = true;

	Literal operator~() const noexcept { return {atom, !positive}; }
	bool holds(const Interpretation& m) const noexcept { return m.contains(atom) == positive; }
	friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(Atom a) noexcept { return {a, true}; }
inline Literal neg(Atom a) noexcept { return {a, false}; }

/// Disjunction of literals, sorted and duplicate-free.
class CnfClause {
public:
	/// nullopt for a tautology (contains a complementary pair).
	static std::optional<CnfClause> make(std::vector<Literal> literals);

	std::span<const Literal> literals() const noexcept { return literals_; }
	std::size_t size() const noexcept { return literals_.size(); }
	bool satisfied_by(const Interpretation& m) const noexcept;
	friend bool operator==(const CnfClause&, const CnfClause&) = default;

private:
	std::vector<Literal> literals_;
};

class CnfTheory {
public:
	explicit CnfTheory(std::shared_ptr<const AtomTable> atoms);

	/// Adds a clause unless it is a tautology or already present.
	bool add(std::vector<Literal> literals);
	bool add(const CnfClause& clause);
	void add_all(const CnfTheory& other);

	std::span<const CnfClause> clauses() const noexcept { return clauses_; }
	std::size_t variable_count() const noexcept { return atoms_->size(); }
	const AtomTable& atoms() const noexcept { return *atoms_; }
	const std::shared_ptr<const AtomTable>& atom_table() const noexcept { return atoms_; }
	std::size_t literal_count() const noexcept;
	bool satisfied_by(const Interpretation& m) const noexcept;

private:
	struct ClauseHash {
		std::size_t operator()(const CnfClause& c) const noexcept;
	};

	std::shared_ptr<const AtomTable>            atoms_;
	std::vector<CnfClause>                      clauses_;
	std::unordered_set<CnfClause, ClauseHash>   seen_;
};

/// head <- q.., not r..  becomes  -q.. | r.. | head
CnfTheory program_to_cnf(const Program& program);

/// nullopt support: the unit -p. Support S: p <-> AND_{r in S} -r, which is
/// the unit p when S is empty.
std::vector<CnfClause> subequation_to_cnf(Atom atom, const std::optional<AtomSet>& support);

/// Chronological-backtracking DPLL. Decisions pick the lowest unassigned
/// variable and try false first; propagation rescans clauses to a fixpoint.
/// Holds no learned or blocking clauses, so its state is linear in the theory.
class Dpll {
public:
	explicit Dpll(const CnfTheory& theory);

	/// Fixes a literal before search. Returns false on an immediate clash.
	bool assume(Literal lit);
	/// Unit propagation to fixpoint; false on conflict.
	bool propagate();
	/// No clause is falsified and none is unit (one unassigned literal, rest false).
	bool propagation_closed() const;

	/// First model from the initial state.
	std::optional<Interpretation> solve();
	/// Next model after the one last returned (search order).
	std::optional<Interpretation> next();

	/// Assignment and trail footprint plus the clause database size.
	std::size_t state_size() const noexcept;

private:
	enum : signed char { Unassigned = -1 };
	struct Decision {
		std::size_t trail_pos;
		bool        flipped;
	};

	bool value_is(Literal lit) const noexcept;
	bool assigned(Atom a) const noexcept { return values_[a.id] != Unassigned; }
	void assign(Literal lit);
	void undo_to(std::size_t trail_size);
	bool backtrack();
	bool search();
	Interpretation model() const;

	const CnfTheory*          theory_;
	std::vector<signed char>  values_;
	std::vector<Literal>      trail_;
	std::vector<Decision>     decisions_;
	bool                      root_conflict_ = false;
	bool                      started_       = false;
};

/// A total model extending `assumptions`, or nullopt if unsatisfiable.
std::optional<Interpretation> dpll_solve(const CnfTheory& theory, std::span<const Literal> assumptions = {});

/// All models in bitmask order. One solver runs throughout; each model found
/// adds a blocking clause before the search resumes from the last decision.
std::vector<Interpretation> enumerate_models(const CnfTheory& theory);

/// Streams models in search order without adding clauses. The callback
/// returns false to stop early.
void for_each_model(const CnfTheory& theory, const std::function<bool(const Interpretation&)>& callback);

/// `c <index> <name>` lines, then `p cnf V C`, then one clause per line.
/// Variables are 1-based in atom-id order.
std::string export_dimacs(const CnfTheory& theory);

/// Reads DIMACS CNF. Names come from `c <index> <name>` comments when present,
/// otherwise variable i is named `x<i>`.
CnfTheory parse_dimacs(std::string_view text);

} // namespace guardres
