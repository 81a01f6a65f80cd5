#pragma once

// Stable models through candidate theories.
//
// A candidate theory is the program (as CNF) plus one subequation per atom:
// either -p or p <-> -S for a support S of p. Every propositional model of a
// candidate is stable, and every stable model satisfies some candidate, so
// walking the candidates and handing each to DPLL is a sound and complete
// solver. Search is two-tier: an odometer over per-atom support streams on
// the outside, DPLL on the inside.

#include "guardres/core.hpp"
#include "guardres/guarded.hpp"
#include "guardres/sat.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace guardres {

struct Subequation {
	Atom                   atom;
	std::optional<Support> support; // nullopt: -p

	bool negative() const noexcept { return !support.has_value(); }
	std::vector<CnfClause> to_cnf() const;
};

struct CandidateTheory {
	std::shared_ptr<const CnfTheory> base;          // program clauses
	std::vector<Subequation>         subequations;  // indexed by atom id

	CnfTheory to_cnf() const;
	/// Total weight of the proof trees behind the support choices.
	std::size_t certificate_size() const noexcept;
	std::size_t state_size() const noexcept;
};

struct CandidateOptions {
	/// Skip candidates where some chosen guard contains an atom whose chosen
	/// support is empty (such a candidate's models are all covered by the
	/// variant choosing -p instead).
	bool prune = false;
};

/// Lazily walks the candidate space. Atoms are ordered by id with the first
/// atom varying slowest; each atom tries -p first, then its subset-minimal
/// supports in stream order. Holds one support stream per atom.
class CandidateStream {
public:
	explicit CandidateStream(const Program& program);

	std::optional<CandidateTheory> next();
	/// Index of the candidate most recently returned by next().
	std::size_t index() const noexcept { return emitted_ - 1; }
	std::size_t state_size() const noexcept;

private:
	bool advance();
	CandidateTheory current() const;

	const Program*                                     program_;
	std::shared_ptr<const CnfTheory>                   base_;
	std::vector<std::optional<Support>>                choice_;
	std::vector<std::unique_ptr<MinimalSupportStream>> streams_;
	std::size_t                                        emitted_ = 0;
	bool                                               done_    = false;
};

/// True when `prune` would skip this candidate.
bool prunable(const CandidateTheory& candidate);

/// All models of the candidate theory in bitmask order. Each one is
/// re-checked against the GL operator; a failure throws std::logic_error.
std::vector<Interpretation> check_candidate(const Program& program, const CandidateTheory& candidate);

struct StableModel {
	Interpretation  model;
	CandidateTheory certificate;
};

struct SolveOptions {
	std::optional<std::size_t> limit;
	bool                       prune = false;
	std::size_t                jobs  = 1;
};

/// Instrumentation for the space discipline: state sizes are counted in
/// atom occurrences.
struct SolveStats {
	std::size_t candidates      = 0;
	std::size_t checked         = 0;
	std::size_t program_size    = 0;
	std::size_t peak_state      = 0;
	std::size_t max_certificate = 0;
};

/// Peak live search state never exceeds
/// kSpaceConstant * (program size + largest certificate).
inline constexpr std::size_t kSpaceConstant = 8;

/// Stable models with certificates, in candidate order (models of one
/// candidate in bitmask order), without duplicates. With jobs > 1 candidates
/// are sharded round-robin over threads and merged back into that order.
std::vector<StableModel> solve_stable(const Program& program, const SolveOptions& options = {},
                                      SolveStats* stats = nullptr);

/// Human-readable certificate: one line per subequation, proofs indented
/// below the support choices.
std::string render_certificate(const CandidateTheory& candidate, const AtomTable& table);

} // namespace guardres
