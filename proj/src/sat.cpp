#include "guardres/sat.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace guardres {

std::optional<CnfClause> CnfClause::make(std::vector<Literal> literals) {
	std::sort(literals.begin(), literals.end());
	literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
	for (std::size_t i = 1; i < literals.size(); ++i) {
		if (literals[i].atom == literals[i - 1].atom) return std::nullopt;
	}
	CnfClause c;
	c.literals_ = std::move(literals);
	return c;
}

bool CnfClause::satisfied_by(const Interpretation& m) const noexcept {
	return std::any_of(literals_.begin(), literals_.end(), [&](const Literal& l) { return l.holds(m); });
}

std::size_t CnfTheory::ClauseHash::operator()(const CnfClause& c) const noexcept {
	std::size_t h = 0;
	for (const auto& l : c.literals()) h = h * 1000003u + (std::size_t{l.atom.id} << 1 | l.positive);
	return h;
}

CnfTheory::CnfTheory(std::shared_ptr<const AtomTable> atoms)
	: atoms_(atoms ? std::move(atoms) : std::make_shared<AtomTable>()) {}

bool CnfTheory::add(std::vector<Literal> literals) {
	auto c = CnfClause::make(std::move(literals));
	return c && add(*c);
}

bool CnfTheory::add(const CnfClause& clause) {
	for (const auto& l : clause.literals()) {
		if (l.atom.id >= variable_count()) throw Error("CNF literal refers to an unknown variable");
	}
	if (!seen_.insert(clause).second) return false;
	clauses_.push_back(clause);
	return true;
}

void CnfTheory::add_all(const CnfTheory& other) {
	for (const auto& c : other.clauses()) add(c);
}

std::size_t CnfTheory::literal_count() const noexcept {
	std::size_t n = 0;
	for (const auto& c : clauses_) n += c.size();
	return n;
}

bool CnfTheory::satisfied_by(const Interpretation& m) const noexcept {
	return std::all_of(clauses_.begin(), clauses_.end(), [&](const CnfClause& c) { return c.satisfied_by(m); });
}

CnfTheory program_to_cnf(const Program& program) {
	CnfTheory cnf(program.atom_table());
	for (const auto& c : program.clauses()) {
		std::vector<Literal> lits;
		for (Atom q : c.pos) lits.push_back(neg(q));
		for (Atom r : c.neg) lits.push_back(pos(r));
		lits.push_back(pos(c.head));
		cnf.add(std::move(lits));
	}
	return cnf;
}

std::vector<CnfClause> subequation_to_cnf(Atom atom, const std::optional<AtomSet>& support) {
	std::vector<CnfClause> out;
	auto push = [&](std::vector<Literal> lits) {
		if (auto c = CnfClause::make(std::move(lits))) out.push_back(std::move(*c));
	};
	if (!support) {
		push({neg(atom)});
		return out;
	}
	std::vector<Literal> back{pos(atom)};
	for (Atom r : *support) {
		push({neg(atom), neg(r)});
		back.push_back(pos(r));
	}
	push(std::move(back));
	return out;
}

// ---------------------------------------------------------------------------
// DPLL
// ---------------------------------------------------------------------------
Dpll::Dpll(const CnfTheory& theory)
	: theory_(&theory), values_(theory.variable_count(), Unassigned) {
	trail_.reserve(values_.size());
}

bool Dpll::value_is(Literal lit) const noexcept {
	auto v = values_[lit.atom.id];
	return v != Unassigned && (v == 1) == lit.positive;
}

void Dpll::assign(Literal lit) {
	values_[lit.atom.id] = lit.positive ? 1 : 0;
	trail_.push_back(lit);
}

void Dpll::undo_to(std::size_t trail_size) {
	while (trail_.size() > trail_size) {
		values_[trail_.back().atom.id] = Unassigned;
		trail_.pop_back();
	}
}

bool Dpll::assume(Literal lit) {
	if (lit.atom.id >= values_.size()) throw Error("assumption refers to an unknown variable");
	if (started_) throw Error("assumptions must precede search");
	if (assigned(lit.atom)) {
		if (!value_is(lit)) root_conflict_ = true;
		return !root_conflict_;
	}
	assign(lit);
	return true;
}

bool Dpll::propagate() {
	bool changed = true;
	while (changed) {
		changed = false;
		for (const auto& c : theory_->clauses()) {
			std::size_t open = 0;
			Literal unit{};
			bool sat = false;
			for (const auto& l : c.literals()) {
				if (!assigned(l.atom)) {
					++open;
					unit = l;
				}
				else if (value_is(l)) {
					sat = true;
					break;
				}
			}
			if (sat) continue;
			if (open == 0) return false;
			if (open == 1) {
				assign(unit);
				changed = true;
			}
		}
	}
	return true;
}

bool Dpll::propagation_closed() const {
	for (const auto& c : theory_->clauses()) {
		std::size_t open = 0;
		bool sat = false;
		for (const auto& l : c.literals()) {
			if (!assigned(l.atom)) ++open;
			else if (value_is(l)) sat = true;
		}
		if (!sat && open <= 1) return false;
	}
	return true;
}

bool Dpll::backtrack() {
	while (!decisions_.empty()) {
		auto& d = decisions_.back();
		Literal decided = trail_[d.trail_pos];
		undo_to(d.trail_pos);
		if (!d.flipped) {
			d.flipped = true;
			assign(~decided);
			return true;
		}
		decisions_.pop_back();
	}
	return false;
}

bool Dpll::search() {
	while (true) {
		if (!propagate()) {
			if (!backtrack()) return false;
			continue;
		}
		auto it = std::find(values_.begin(), values_.end(), Unassigned);
		if (it == values_.end()) return true;
		Atom a{static_cast<std::uint32_t>(it - values_.begin())};
		decisions_.push_back({trail_.size(), false});
		assign(neg(a));
	}
}

Interpretation Dpll::model() const {
	Interpretation m;
	for (std::uint32_t i = 0; i != values_.size(); ++i) {
		if (values_[i] == 1) m.insert(Atom{i});
	}
	return m;
}

std::optional<Interpretation> Dpll::solve() {
	if (started_) throw Error("solve() may only be called once; use next()");
	started_ = true;
	if (root_conflict_ || !search()) return std::nullopt;
	return model();
}

std::optional<Interpretation> Dpll::next() {
	if (!started_) return solve();
	if (!backtrack() || !search()) return std::nullopt;
	return model();
}

std::size_t Dpll::state_size() const noexcept {
	return theory_->literal_count() + values_.size() + trail_.size() + decisions_.size();
}

std::optional<Interpretation> dpll_solve(const CnfTheory& theory, std::span<const Literal> assumptions) {
	Dpll solver(theory);
	for (const auto& a : assumptions) {
		if (!solver.assume(a)) return std::nullopt;
	}
	return solver.solve();
}

std::vector<Interpretation> enumerate_models(const CnfTheory& theory) {
	CnfTheory work(theory.atom_table());
	work.add_all(theory);
	std::vector<Interpretation> out;
	Dpll solver(work);
	for (auto m = solver.solve(); m; m = solver.next()) {
		std::vector<Literal> block;
		for (std::uint32_t i = 0; i != work.variable_count(); ++i) {
			Atom a{i};
			block.push_back(m->contains(a) ? neg(a) : pos(a));
		}
		out.push_back(std::move(*m));
		// The empty blocking clause (zero variables) is falsified outright.
		if (block.empty()) break;
		work.add(std::move(block));
	}
	std::sort(out.begin(), out.end());
	return out;
}

void for_each_model(const CnfTheory& theory, const std::function<bool(const Interpretation&)>& callback) {
	Dpll solver(theory);
	for (auto m = solver.solve(); m; m = solver.next()) {
		if (!callback(*m)) return;
	}
}

// ---------------------------------------------------------------------------
// DIMACS
// ---------------------------------------------------------------------------
std::string export_dimacs(const CnfTheory& theory) {
	std::string out;
	for (std::uint32_t i = 0; i != theory.variable_count(); ++i) {
		out += "c " + std::to_string(i + 1) + " " + theory.atoms().name(Atom{i}) + "\n";
	}
	out += "p cnf " + std::to_string(theory.variable_count()) + " " + std::to_string(theory.clauses().size()) + "\n";
	for (const auto& c : theory.clauses()) {
		for (const auto& l : c.literals()) {
			out += (l.positive ? "" : "-") + std::to_string(l.atom.id + 1) + " ";
		}
		out += "0\n";
	}
	return out;
}

CnfTheory parse_dimacs(std::string_view text) {
	std::istringstream in{std::string(text)};
	std::string line;
	std::size_t line_no = 0;
	std::map<long, std::string> names;
	long vars = -1;
	long declared = -1;
	std::vector<std::vector<long>> clauses;
	std::vector<long> current;
	auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, SourceSpan{line_no, 1}); };

	while (std::getline(in, line)) {
		++line_no;
		std::istringstream ls(line);
		std::string head;
		if (!(ls >> head)) continue;
		if (head == "c") {
			long idx = 0;
			std::string name;
			if (ls >> idx >> name && AtomTable::is_identifier(name)) names[idx] = name;
			continue;
		}
		if (head == "p") {
			std::string fmt;
			if (!(ls >> fmt >> vars >> declared) || fmt != "cnf" || vars < 0 || declared < 0) fail("bad problem line");
			continue;
		}
		if (vars < 0) fail("clause before problem line");
		ls.clear();
		ls.str(line);
		long lit = 0;
		while (ls >> lit) {
			if (lit == 0) {
				clauses.push_back(std::move(current));
				current.clear();
			}
			else {
				if (std::labs(lit) > vars) fail("literal out of range");
				current.push_back(lit);
			}
		}
		if (!ls.eof()) fail("malformed literal");
	}
	if (vars < 0) fail("missing problem line");
	if (!current.empty()) clauses.push_back(std::move(current));

	auto table = std::make_shared<AtomTable>();
	for (long v = 1; v <= vars; ++v) {
		auto it = names.find(v);
		std::string name = it != names.end() ? it->second : "x" + std::to_string(v);
		if (table->find(name)) name = "x" + std::to_string(v);
		if (table->intern(name).id != static_cast<std::uint32_t>(v - 1)) fail("duplicate variable name");
	}
	CnfTheory cnf(table);
	for (const auto& c : clauses) {
		std::vector<Literal> lits;
		for (long l : c) lits.push_back({Atom{static_cast<std::uint32_t>(std::labs(l) - 1)}, l > 0});
		cnf.add(std::move(lits));
	}
	return cnf;
}

} // namespace guardres
