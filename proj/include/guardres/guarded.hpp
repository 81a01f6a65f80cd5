#pragma once

// Guarded unit resolution.
//
// A program clause  p <- q1..qn, not r1..rm  is read as the guarded clause
// p <- q1..qn : {r1..rm}. Resolving a guarded clause with a guarded atom
// q : S removes q from the body and adds S to the guard. A guarded atom
// p : S derivable this way is a *support* of p; an interpretation M admits
// it when M and S are disjoint. The atoms with an admitted support are
// exactly the Gelfond-Lifschitz image of M.

#include "guardres/core.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guardres {

struct GuardedAtom {
	Atom    atom;
	AtomSet guard;
	friend bool operator==(const GuardedAtom&, const GuardedAtom&) = default;
};

struct GuardedClause {
	Atom    head;
	AtomSet body;
	AtomSet guard;

	bool is_atom() const noexcept { return body.empty(); }
	GuardedAtom as_atom() const { return {head, guard}; }
	friend bool operator==(const GuardedClause&, const GuardedClause&) = default;
};

/// Raised when an operation is applied outside its domain (resolving on an
/// atom that is not in the body).
class PreconditionError : public Error {
public:
	using Error::Error;
};

/// Raised by verify_proof for a malformed certificate.
class ProofError : public Error {
public:
	using Error::Error;
};

GuardedClause translate(const Clause& clause);
GuardedClause guarded_resolve(const GuardedClause& clause, const GuardedAtom& atom);
bool admits(const Interpretation& m, const GuardedAtom& atom) noexcept;

class ProofTree;
using ProofPtr = std::shared_ptr<const ProofTree>;

/// Binary derivation tree. Internal nodes have a clause parent (the guarded
/// clause being resolved) and an atom parent (a derived guarded atom).
/// Nodes are immutable and may be shared between trees.
class ProofTree {
public:
	static ProofPtr leaf(GuardedClause label);
	/// Builds the node produced by resolving the two parents' labels.
	static ProofPtr resolve(ProofPtr clause_parent, ProofPtr atom_parent);
	/// Unchecked constructor; verify_proof is the only judge of these.
	static ProofPtr node(GuardedClause label, ProofPtr clause_parent, ProofPtr atom_parent);

	const GuardedClause& label() const noexcept { return label_; }
	bool is_leaf() const noexcept { return !clause_parent_ && !atom_parent_; }
	const ProofPtr& clause_parent() const noexcept { return clause_parent_; }
	const ProofPtr& atom_parent() const noexcept { return atom_parent_; }

	std::size_t node_count() const noexcept;
	/// Sum over nodes of 1 + |body| + |guard|.
	std::size_t weight() const noexcept;
	/// Union of the guards on all leaves.
	AtomSet leaf_guards() const;

	ProofTree(GuardedClause label, ProofPtr clause_parent, ProofPtr atom_parent);

private:
	GuardedClause label_;
	ProofPtr      clause_parent_;
	ProofPtr      atom_parent_;
};

/// Checks every leaf against g(P) and every internal node against the
/// resolution rule. Returns the root guarded atom; throws ProofError.
GuardedAtom verify_proof(const ProofTree& tree, const Program& program);

/// Indented text, one node per line: `<depth>| head <- body : {guard}` or
/// `<depth>| atom : {guard}`, each line prefixed by two spaces per level.
std::string render_proof(const ProofTree& tree, const AtomTable& table);
/// (leaf L) | (res L T T) with L = (head (body...) (guard...)).
std::string proof_to_sexpr(const ProofTree& tree, const AtomTable& table);
ProofPtr proof_from_sexpr(std::string_view text, const AtomTable& table);

std::string render_guarded(const GuardedClause& label, const AtomTable& table);

struct Support {
	AtomSet  guard;
	ProofPtr proof;
};

struct SupportLimits {
	std::size_t max_per_atom    = 10000;
	std::size_t max_derivations = 0; // 0: unbounded
};

/// Per atom, the subset-minimal supports (an antichain), each with a proof.
/// Guards of one atom are listed in bitmask order.
class SupportTable {
public:
	explicit SupportTable(std::size_t atom_count = 0) : entries_(atom_count) {}

	std::span<const Support> supports(Atom a) const { return entries_.at(a.id); }
	std::size_t atom_count() const noexcept { return entries_.size(); }
	std::vector<AtomSet> guards(Atom a) const;
	/// Same guards per atom (proofs are ignored).
	bool same_guards(const SupportTable& other) const;

private:
	friend SupportTable saturate_supports(const Program&, const SupportLimits&);
	std::vector<std::vector<Support>> entries_;
};

/// Bottom-up saturation (semi-naive) with antichain pruning.
/// Throws ResourceError when a limit is hit.
SupportTable saturate_supports(const Program& program, const SupportLimits& limits = {});

/// Lazy depth-first enumeration of supports of one atom with proofs.
///
/// Clauses are tried in program order and body atoms are resolved in atom-id
/// order. An atom is never expanded again inside its own derivation branch,
/// which keeps the search finite; every subset-minimal support is still
/// produced because a repeated atom on a branch can only enlarge the guard.
/// Yields may repeat guards and include non-minimal ones. The program must
/// outlive the stream.
class SupportStream {
public:
	SupportStream(const Program& program, Atom atom);
	~SupportStream();
	SupportStream(SupportStream&&) noexcept;
	SupportStream& operator=(SupportStream&&) noexcept;

	std::optional<Support> next();
	/// Live search state, in atom-occurrence units.
	std::size_t state_size() const noexcept;

	struct Frame;
	struct Index;

private:
	std::shared_ptr<const Index> index_;
	std::unique_ptr<Frame>       root_;
};

/// Convenience: drains a SupportStream.
std::vector<Support> enumerate_supports(const Program& program, Atom atom);

/// Filters a SupportStream down to subset-minimal guards, each reported once
/// (at its first occurrence in stream order).
///
/// Minimality of S is decided with the GL operator: p has a support inside X
/// iff p is in GL(At \ X). Repeats are detected by replaying a fresh stream
/// rather than remembering past guards, so the live state stays bounded by
/// the current derivation.
class MinimalSupportStream {
public:
	MinimalSupportStream(const Program& program, Atom atom);

	std::optional<Support> next();
	std::size_t state_size() const noexcept;

private:
	bool minimal(const AtomSet& guard) const;
	bool seen_before(const AtomSet& guard, std::size_t position) const;

	const Program* program_;
	Atom           atom_;
	SupportStream  stream_;
	std::size_t    position_ = 0;
};

} // namespace guardres
