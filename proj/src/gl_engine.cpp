#include "guardres/gl_engine.hpp"

#include <algorithm>
#include <utility>

namespace guardres {

void RankFunction::set(Atom a, unsigned rank) {
	if (a.id >= ranks_.size()) ranks_.resize(a.id + 1);
	ranks_[a.id] = rank;
}

std::optional<unsigned> RankFunction::operator[](Atom a) const {
	if (a.id >= ranks_.size()) return std::nullopt;
	return ranks_[a.id];
}

AtomSet RankFunction::domain() const {
	AtomSet d;
	for (std::uint32_t i = 0; i != ranks_.size(); ++i) {
		if (ranks_[i]) d.insert(Atom{i});
	}
	return d;
}

HornProgram gl_reduct(const Program& program, const Interpretation& m) {
	HornProgram horn{program.atom_table(), {}};
	for (const auto& c : program.clauses()) {
		if (c.neg.intersects(m)) continue;
		horn.clauses.push_back({c.head, c.pos.to_vector()});
	}
	return horn;
}

RankFunction least_model_ranks(const HornProgram& horn) {
	// Dowling-Gallier: each clause keeps a count of body atoms not yet derived.
	// The queue is FIFO, so atoms are processed in nondecreasing rank and the
	// first derivation of an atom is also its earliest one.
	std::size_t n = horn.atom_count();
	for (const auto& c : horn.clauses) {
		n = std::max<std::size_t>(n, c.head.id + 1);
		for (Atom b : c.body) n = std::max<std::size_t>(n, b.id + 1);
	}
	RankFunction ranks(n);
	std::vector<std::vector<std::size_t>> watching(n);
	std::vector<std::size_t> missing(horn.clauses.size());
	std::vector<Atom> queue;
	queue.reserve(n);

	auto fire = [&](const HornClause& c, unsigned rank) {
		if (!ranks.defined(c.head)) {
			ranks.set(c.head, rank);
			queue.push_back(c.head);
		}
	};

	for (std::size_t i = 0; i != horn.clauses.size(); ++i) {
		const auto& c = horn.clauses[i];
		missing[i] = c.body.size();
		for (Atom b : c.body) watching[b.id].push_back(i);
	}
	for (std::size_t i = 0; i != horn.clauses.size(); ++i) {
		if (missing[i] == 0) fire(horn.clauses[i], 0);
	}
	for (std::size_t qi = 0; qi != queue.size(); ++qi) {
		Atom a = queue[qi];
		unsigned r = *ranks[a];
		for (std::size_t ci : watching[a.id]) {
			if (--missing[ci] == 0) fire(horn.clauses[ci], r + 1);
		}
	}
	return ranks;
}

Interpretation least_model(const HornProgram& horn) {
	return least_model_ranks(horn).domain();
}

Interpretation gl_operator(const Program& program, const Interpretation& m) {
	return least_model(gl_reduct(program, m));
}

bool is_stable(const Program& program, const Interpretation& m) {
	return gl_operator(program, m) == m;
}

std::vector<Interpretation> brute_force_stable(const Program& program, std::size_t cap) {
	std::size_t n = program.atom_count();
	if (n > cap || n >= 63) {
		throw ResourceError("brute-force enumeration refused: " + std::to_string(n) +
		                    " atoms exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 62)));
	}
	std::vector<Interpretation> out;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
		auto m = AtomSet::from_mask(mask);
		if (is_stable(program, m)) out.push_back(std::move(m));
	}
	return out;
}

bool is_supported(const Program& program, const Interpretation& m) {
	if (!is_model(m, program)) return false;
	AtomSet supported;
	for (const auto& c : program.clauses()) {
		if (m.contains(c.head) && body_holds(m, c)) supported.insert(c.head);
	}
	return m.subset_of(supported);
}

bool verify_levels(const Program& program, const Interpretation& m, const RankFunction& ranks) {
	if (!is_model(m, program)) return false;
	if (ranks.domain() != m) return false;
	for (Atom p : m) {
		unsigned rp = *ranks[p];
		bool witnessed = std::any_of(program.clauses().begin(), program.clauses().end(), [&](const Clause& c) {
			if (c.head != p || !body_holds(m, c)) return false;
			return std::all_of(c.pos.begin(), c.pos.end(), [&](Atom q) { return *ranks[q] < rp; });
		});
		if (!witnessed) return false;
	}
	return true;
}

std::optional<RankFunction> compute_levels(const Program& program, const Interpretation& m) {
	if (!is_model(m, program)) return std::nullopt;
	// Level-wise closure over the clauses applicable in m.
	RankFunction ranks(program.atom_count());
	std::vector<const Clause*> pending;
	for (const auto& c : program.clauses()) {
		if (m.contains(c.head) && body_holds(m, c)) pending.push_back(&c);
	}
	AtomSet reached;
	for (unsigned level = 0; !pending.empty(); ++level) {
		AtomSet fresh;
		std::vector<const Clause*> rest;
		for (const Clause* c : pending) {
			if (reached.contains(c->head)) continue;
			if (c->pos.subset_of(reached)) fresh.insert(c->head);
			else rest.push_back(c);
		}
		if (fresh.empty()) break;
		for (Atom a : fresh) ranks.set(a, level);
		reached |= fresh;
		pending = std::move(rest);
	}
	if (reached != m) return std::nullopt;
	if (!verify_levels(program, m, ranks)) return std::nullopt;
	return ranks;
}

namespace {

// Kahn's algorithm; rank(v) = longest path from a source. `nodes` restricts
// the vertex set, edges are (from, to) pairs over those nodes.
std::optional<RankFunction> topological_ranks(std::size_t atom_count, const AtomSet& nodes,
                                              const std::vector<std::pair<Atom, Atom>>& edges) {
	std::vector<std::vector<Atom>> succ(atom_count);
	std::vector<std::size_t> indeg(atom_count, 0);
	for (auto [from, to] : edges) {
		succ[from.id].push_back(to);
		++indeg[to.id];
	}
	RankFunction ranks(atom_count);
	std::vector<unsigned> rank(atom_count, 0);
	std::vector<Atom> ready;
	for (Atom a : nodes) {
		if (indeg[a.id] == 0) ready.push_back(a);
	}
	std::size_t done = 0;
	while (!ready.empty()) {
		Atom a = ready.back();
		ready.pop_back();
		++done;
		ranks.set(a, rank[a.id]);
		for (Atom b : succ[a.id]) {
			rank[b.id] = std::max(rank[b.id], rank[a.id] + 1);
			if (--indeg[b.id] == 0) ready.push_back(b);
		}
	}
	if (done != nodes.size()) return std::nullopt;
	return ranks;
}

} // namespace

std::optional<RankFunction> is_tight(const Program& program) {
	std::vector<std::pair<Atom, Atom>> edges;
	for (const auto& c : program.clauses()) {
		for (Atom q : c.pos) edges.emplace_back(q, c.head);
	}
	return topological_ranks(program.atom_count(), AtomSet::universe(program.atom_count()), edges);
}

std::optional<RankFunction> is_tight_on(const Program& program, const Interpretation& m, TightReading reading) {
	std::vector<std::pair<Atom, Atom>> edges;
	for (const auto& c : program.clauses()) {
		if (!m.contains(c.head)) continue;
		if (reading == TightReading::Restricted) {
			if (!body_holds(m, c)) continue;
		}
		else if (!c.pos.subset_of(m)) {
			return std::nullopt;
		}
		for (Atom q : c.pos) edges.emplace_back(q, c.head);
	}
	return topological_ranks(program.atom_count(), m, edges);
}

} // namespace guardres
