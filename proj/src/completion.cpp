#include "guardres/completion.hpp"

#include <algorithm>
#include <set>

namespace guardres {

bool Equation::satisfied_by(const Interpretation& m) const {
	bool in = m.contains(atom);
	switch (shape) {
		case Shape::Positive: return in;
		case Shape::Negative: return !in;
		case Shape::Equiv: {
			bool rhs = std::any_of(supports.begin(), supports.end(), [&](const AtomSet& s) { return !s.intersects(m); });
			return in == rhs;
		}
	}
	return false;
}

bool CompletionTheory::satisfied_by(const Interpretation& m) const {
	return std::all_of(equations.begin(), equations.end(), [&](const Equation& e) { return e.satisfied_by(m); });
}

Equation make_equation(Atom atom, std::vector<AtomSet> minimal_supports) {
	Equation eq{atom, Equation::Shape::Negative, {}};
	if (minimal_supports.empty()) return eq;
	// In an antichain the empty guard can only appear alone.
	if (minimal_supports.size() == 1 && minimal_supports.front().empty()) {
		eq.shape = Equation::Shape::Positive;
		return eq;
	}
	eq.shape    = Equation::Shape::Equiv;
	eq.supports = std::move(minimal_supports);
	return eq;
}

CompletionTheory build_completion(const Program& program, const SupportTable& supports) {
	CompletionTheory t{program.atom_table(), {}};
	for (Atom a : program.atoms().atoms()) t.equations.push_back(make_equation(a, supports.guards(a)));
	return t;
}

CompletionTheory build_completion(const Program& program, const SupportLimits& limits) {
	return build_completion(program, saturate_supports(program, limits));
}

CnfTheory completion_to_cnf(const CompletionTheory& theory) {
	auto table = std::make_shared<AtomTable>(*theory.atoms);
	struct Pending {
		Atom                          atom;
		std::vector<std::pair<Atom, const AtomSet*>> disjuncts;
	};
	std::vector<Pending> pending;
	std::size_t counter = 0;
	for (const auto& eq : theory.equations) {
		if (eq.shape != Equation::Shape::Equiv) continue;
		Pending p{eq.atom, {}};
		for (const auto& s : eq.supports) {
			std::string name;
			do name = "_d" + std::to_string(counter++);
			while (table->find(name));
			p.disjuncts.emplace_back(table->intern(name), &s);
		}
		pending.push_back(std::move(p));
	}

	CnfTheory cnf(table);
	for (const auto& eq : theory.equations) {
		if (eq.shape == Equation::Shape::Positive) cnf.add({pos(eq.atom)});
		if (eq.shape == Equation::Shape::Negative) cnf.add({neg(eq.atom)});
	}
	for (const auto& p : pending) {
		std::vector<Literal> forward{neg(p.atom)};
		for (auto [aux, guard] : p.disjuncts) {
			forward.push_back(pos(aux));
			cnf.add({neg(aux), pos(p.atom)});
			// aux <-> AND_{r in guard} -r
			std::vector<Literal> back{pos(aux)};
			for (Atom r : *guard) {
				cnf.add({neg(aux), neg(r)});
				back.push_back(pos(r));
			}
			cnf.add(std::move(back));
		}
		cnf.add(std::move(forward));
	}
	return cnf;
}

std::vector<Interpretation> models_of_completion(const CompletionTheory& theory, std::size_t cap) {
	std::size_t n = theory.atoms->size();
	if (n > cap) {
		throw ResourceError("model enumeration refused: " + std::to_string(n) + " atoms exceeds the cap of " +
		                    std::to_string(cap));
	}
	auto originals = AtomSet::universe(n);
	std::set<Interpretation> out;
	for_each_model(completion_to_cnf(theory), [&](const Interpretation& m) {
		out.insert(m & originals);
		return true;
	});
	return {out.begin(), out.end()};
}

std::string render_equation(const Equation& eq, const AtomTable& table) {
	const auto& name = table.name(eq.atom);
	switch (eq.shape) {
		case Equation::Shape::Positive: return name + ".";
		case Equation::Shape::Negative: return "-" + name + ".";
		case Equation::Shape::Equiv: break;
	}
	std::string out = name + " <->";
	bool first_disjunct = true;
	for (const auto& s : eq.supports) {
		out += first_disjunct ? " " : " | ";
		first_disjunct = false;
		bool first = true;
		for (const auto& r : atom_names(table, s)) {
			if (!first) out += " & ";
			out += "-" + r;
			first = false;
		}
	}
	return out;
}

std::string render_completion(const CompletionTheory& theory) {
	std::string out;
	for (const auto& eq : theory.equations) out += render_equation(eq, *theory.atoms) + "\n";
	return out;
}

Program dung_transform(const Program& program, const SupportLimits& limits) {
	auto table = saturate_supports(program, limits);
	std::vector<Clause> clauses;
	for (Atom a : program.atoms().atoms()) {
		for (const auto& s : table.supports(a)) clauses.push_back({a, {}, s.guard});
	}
	return Program(program.atom_table(), std::move(clauses));
}

namespace {

std::set<std::vector<std::string>> named_models(const Program& p, std::size_t cap) {
	std::set<std::vector<std::string>> out;
	for (const auto& m : brute_force_stable(p, cap)) out.insert(atom_names(p.atoms(), m));
	return out;
}

} // namespace

bool equivalent(const Program& a, const Program& b, std::size_t cap) {
	return named_models(a, cap) == named_models(b, cap);
}

} // namespace guardres
