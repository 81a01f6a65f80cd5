#include "guardres/solver.hpp"

#include "guardres/gl_engine.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace guardres {

std::vector<CnfClause> Subequation::to_cnf() const {
	if (!support) return subequation_to_cnf(atom, std::nullopt);
	return subequation_to_cnf(atom, support->guard);
}

CnfTheory CandidateTheory::to_cnf() const {
	CnfTheory cnf(base->atom_table());
	cnf.add_all(*base);
	for (const auto& s : subequations) {
		for (const auto& c : s.to_cnf()) cnf.add(c);
	}
	return cnf;
}

std::size_t CandidateTheory::certificate_size() const noexcept {
	std::size_t n = 0;
	for (const auto& s : subequations) {
		if (s.support) n += s.support->proof->weight();
	}
	return n;
}

std::size_t CandidateTheory::state_size() const noexcept {
	std::size_t n = certificate_size();
	for (const auto& s : subequations) n += 1 + (s.support ? s.support->guard.size() : 0);
	return n;
}

// ---------------------------------------------------------------------------
// CandidateStream
// ---------------------------------------------------------------------------
CandidateStream::CandidateStream(const Program& program)
	: program_(&program)
	, base_(std::make_shared<const CnfTheory>(program_to_cnf(program)))
	, choice_(program.atom_count())
	, streams_(program.atom_count()) {}

std::optional<CandidateTheory> CandidateStream::next() {
	if (done_) return std::nullopt;
	if (emitted_ > 0 && !advance()) {
		done_ = true;
		return std::nullopt;
	}
	++emitted_;
	return current();
}

bool CandidateStream::advance() {
	for (std::size_t j = choice_.size(); j-- > 0;) {
		if (!streams_[j]) streams_[j] = std::make_unique<MinimalSupportStream>(*program_, Atom{static_cast<std::uint32_t>(j)});
		if (auto s = streams_[j]->next()) {
			choice_[j] = std::move(s);
			return true;
		}
		// Wrap around to -p and carry into the previous atom.
		choice_[j].reset();
		streams_[j].reset();
	}
	return false;
}

CandidateTheory CandidateStream::current() const {
	CandidateTheory t{base_, {}};
	t.subequations.reserve(choice_.size());
	for (std::uint32_t i = 0; i != choice_.size(); ++i) t.subequations.push_back({Atom{i}, choice_[i]});
	return t;
}

std::size_t CandidateStream::state_size() const noexcept {
	std::size_t n = 0;
	for (std::size_t i = 0; i != choice_.size(); ++i) {
		n += 1;
		if (choice_[i]) n += choice_[i]->guard.size();
		if (streams_[i]) n += streams_[i]->state_size();
	}
	return n;
}

bool prunable(const CandidateTheory& candidate) {
	AtomSet forced;
	for (const auto& s : candidate.subequations) {
		if (s.support && s.support->guard.empty()) forced.insert(s.atom);
	}
	return std::any_of(candidate.subequations.begin(), candidate.subequations.end(), [&](const Subequation& s) {
		return s.support && s.support->guard.intersects(forced);
	});
}

namespace {

/// Models of one candidate; `peak` receives the largest DPLL footprint seen.
std::vector<Interpretation> candidate_models(const Program& program, const CandidateTheory& candidate,
                                             std::size_t* peak) {
	auto cnf = candidate.to_cnf();
	std::vector<Interpretation> out;
	Dpll solver(cnf);
	std::size_t high = solver.state_size();
	for (auto m = solver.solve(); m; m = solver.next()) {
		high = std::max(high, solver.state_size());
		if (!is_stable(program, *m)) {
			throw std::logic_error("candidate theory produced a model that is not stable: " +
			                       format_atoms(program.atoms(), *m));
		}
		out.push_back(std::move(*m));
	}
	if (peak) *peak = high;
	std::sort(out.begin(), out.end());
	return out;
}

struct Found {
	std::size_t     index;
	Interpretation  model;
	CandidateTheory certificate;
};

void search_shard(const Program& program, const SolveOptions& options, std::size_t shard, std::size_t shards,
                  std::vector<Found>& found, SolveStats& stats) {
	CandidateStream stream(program);
	std::unordered_set<Interpretation, AtomSetHash> seen;
	while (auto cand = stream.next()) {
		++stats.candidates;
		std::size_t idx = stream.index();
		if (idx % shards != shard) continue;
		if (options.prune && prunable(*cand)) continue;
		++stats.checked;
		std::size_t dpll = 0;
		auto models = candidate_models(program, *cand, &dpll);
		std::size_t live = stream.state_size() + cand->state_size() + dpll;
		stats.peak_state      = std::max(stats.peak_state, live);
		stats.max_certificate = std::max(stats.max_certificate, cand->certificate_size());
		for (auto& m : models) {
			if (!seen.insert(m).second) continue;
			found.push_back({idx, std::move(m), *cand});
		}
		// A single shard sees every candidate in order, so it can stop early.
		if (shards == 1 && options.limit && found.size() >= *options.limit) break;
	}
}

} // namespace

std::vector<Interpretation> check_candidate(const Program& program, const CandidateTheory& candidate) {
	return candidate_models(program, candidate, nullptr);
}

std::vector<StableModel> solve_stable(const Program& program, const SolveOptions& options, SolveStats* stats) {
	std::size_t shards = std::max<std::size_t>(1, options.jobs);
	std::vector<std::vector<Found>> found(shards);
	std::vector<SolveStats> shard_stats(shards);

	if (shards == 1) {
		search_shard(program, options, 0, 1, found[0], shard_stats[0]);
	}
	else {
		std::vector<std::exception_ptr> errors(shards);
		std::vector<std::thread> workers;
		for (std::size_t w = 0; w != shards; ++w) {
			workers.emplace_back([&, w] {
				try {
					search_shard(program, options, w, shards, found[w], shard_stats[w]);
				}
				catch (...) {
					errors[w] = std::current_exception();
				}
			});
		}
		for (auto& t : workers) t.join();
		for (auto& e : errors) {
			if (e) std::rethrow_exception(e);
		}
	}

	std::vector<Found> all;
	for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(all));
	std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) {
		return a.index != b.index ? a.index < b.index : a.model < b.model;
	});

	std::vector<StableModel> out;
	std::unordered_set<Interpretation, AtomSetHash> seen;
	for (auto& f : all) {
		if (options.limit && out.size() >= *options.limit) break;
		if (!seen.insert(f.model).second) continue;
		out.push_back({std::move(f.model), std::move(f.certificate)});
	}

	if (stats) {
		*stats = SolveStats{};
		stats->program_size = program.size();
		for (const auto& s : shard_stats) {
			stats->candidates      = std::max(stats->candidates, s.candidates);
			stats->checked        += s.checked;
			stats->peak_state      = std::max(stats->peak_state, s.peak_state);
			stats->max_certificate = std::max(stats->max_certificate, s.max_certificate);
		}
	}
	return out;
}

std::string render_certificate(const CandidateTheory& candidate, const AtomTable& table) {
	std::string out;
	for (const auto& s : candidate.subequations) {
		const auto& name = table.name(s.atom);
		if (!s.support) {
			out += "  -" + name + "\n";
			continue;
		}
		if (s.support->guard.empty()) {
			out += "  " + name + "\n";
		}
		else {
			out += "  " + name + " <->";
			bool first = true;
			for (const auto& r : atom_names(table, s.support->guard)) {
				out += first ? " -" : " & -";
				out += r;
				first = false;
			}
			out += "\n";
		}
		std::string proof = render_proof(*s.support->proof, table);
		std::size_t start = 0;
		while (start < proof.size()) {
			auto end = proof.find('\n', start);
			out += "    " + proof.substr(start, end - start) + "\n";
			start = end + 1;
		}
	}
	return out;
}

} // namespace guardres
