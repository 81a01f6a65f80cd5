#include "guardres/guarded.hpp"

#include "guardres/gl_engine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace guardres {

GuardedClause translate(const Clause& clause) {
	return {clause.head, clause.pos, clause.neg};
}

GuardedClause guarded_resolve(const GuardedClause& clause, const GuardedAtom& atom) {
	if (!clause.body.contains(atom.atom)) {
		throw PreconditionError("resolved atom is not in the body of the guarded clause");
	}
	GuardedClause out = clause;
	out.body.erase(atom.atom);
	out.guard |= atom.guard;
	return out;
}

bool admits(const Interpretation& m, const GuardedAtom& atom) noexcept {
	return !m.intersects(atom.guard);
}

// ---------------------------------------------------------------------------
// ProofTree
// ---------------------------------------------------------------------------
ProofTree::ProofTree(GuardedClause label, ProofPtr clause_parent, ProofPtr atom_parent)
	: label_(std::move(label)), clause_parent_(std::move(clause_parent)), atom_parent_(std::move(atom_parent)) {}

ProofPtr ProofTree::leaf(GuardedClause label) {
	return std::make_shared<const ProofTree>(std::move(label), nullptr, nullptr);
}

ProofPtr ProofTree::resolve(ProofPtr clause_parent, ProofPtr atom_parent) {
	auto label = guarded_resolve(clause_parent->label(), atom_parent->label().as_atom());
	return std::make_shared<const ProofTree>(std::move(label), std::move(clause_parent), std::move(atom_parent));
}

ProofPtr ProofTree::node(GuardedClause label, ProofPtr clause_parent, ProofPtr atom_parent) {
	return std::make_shared<const ProofTree>(std::move(label), std::move(clause_parent), std::move(atom_parent));
}

std::size_t ProofTree::node_count() const noexcept {
	std::size_t n = 1;
	if (clause_parent_) n += clause_parent_->node_count();
	if (atom_parent_) n += atom_parent_->node_count();
	return n;
}

std::size_t ProofTree::weight() const noexcept {
	std::size_t w = 1 + label_.body.size() + label_.guard.size();
	if (clause_parent_) w += clause_parent_->weight();
	if (atom_parent_) w += atom_parent_->weight();
	return w;
}

AtomSet ProofTree::leaf_guards() const {
	if (is_leaf()) return label_.guard;
	AtomSet out;
	if (clause_parent_) out |= clause_parent_->leaf_guards();
	if (atom_parent_) out |= atom_parent_->leaf_guards();
	return out;
}

namespace {

struct GuardedClauseHash {
	std::size_t operator()(const GuardedClause& c) const noexcept {
		return (c.head.id * 1000003u) ^ (c.body.hash() * 31) ^ c.guard.hash();
	}
};

class ProofChecker {
public:
	explicit ProofChecker(const Program& program) {
		for (const auto& c : program.clauses()) leaves_.insert(translate(c));
	}

	const GuardedClause& check(const ProofTree& node) const {
		if (node.is_leaf()) {
			if (!leaves_.count(node.label())) throw ProofError("leaf is not the translation of a program clause");
			return node.label();
		}
		if (!node.clause_parent() || !node.atom_parent()) {
			throw ProofError("internal node must have both a clause parent and an atom parent");
		}
		const auto& clause = check(*node.clause_parent());
		const auto& atom   = check(*node.atom_parent());
		if (!atom.is_atom()) throw ProofError("atom parent still has an unresolved body");
		GuardedClause expected;
		try {
			expected = guarded_resolve(clause, atom.as_atom());
		}
		catch (const PreconditionError&) {
			throw ProofError("atom parent does not occur in the body of the clause parent");
		}
		if (expected != node.label()) throw ProofError("node label is not the resolvent of its parents");
		return node.label();
	}

private:
	std::unordered_set<GuardedClause, GuardedClauseHash> leaves_;
};

std::string join_names(const AtomTable& table, const AtomSet& set, const char* sep) {
	std::string out;
	bool first = true;
	for (const auto& n : atom_names(table, set)) {
		if (!first) out += sep;
		out += n;
		first = false;
	}
	return out;
}

void render_node(const ProofTree& t, const AtomTable& table, std::size_t depth, std::string& out) {
	out.append(2 * depth, ' ');
	out += std::to_string(depth) + "| " + render_guarded(t.label(), table) + "\n";
	if (t.clause_parent()) render_node(*t.clause_parent(), table, depth + 1, out);
	if (t.atom_parent()) render_node(*t.atom_parent(), table, depth + 1, out);
}

void sexpr_node(const ProofTree& t, const AtomTable& table, std::string& out) {
	const auto& l = t.label();
	std::string label = "(" + table.name(l.head) + " (" + join_names(table, l.body, " ") + ") (" +
	                    join_names(table, l.guard, " ") + "))";
	if (t.is_leaf()) {
		out += "(leaf " + label + ")";
		return;
	}
	out += "(res " + label + " ";
	if (t.clause_parent()) sexpr_node(*t.clause_parent(), table, out);
	else out += "()";
	out += " ";
	if (t.atom_parent()) sexpr_node(*t.atom_parent(), table, out);
	else out += "()";
	out += ")";
}

class SexprReader {
public:
	SexprReader(std::string_view text, const AtomTable& table) : text_(text), table_(table) {}

	ProofPtr tree() {
		expect('(');
		auto kind = word();
		auto label = guarded_label();
		ProofPtr out;
		if (kind == "leaf") {
			out = ProofTree::leaf(std::move(label));
		}
		else if (kind == "res") {
			auto cp = tree();
			auto ap = tree();
			out = ProofTree::node(std::move(label), std::move(cp), std::move(ap));
		}
		else {
			fail("expected 'leaf' or 'res'");
		}
		expect(')');
		return out;
	}

	void finish() {
		skip();
		if (pos_ != text_.size()) fail("trailing input");
	}

private:
	GuardedClause guarded_label() {
		expect('(');
		GuardedClause l;
		l.head = atom(word());
		l.body = atom_list();
		l.guard = atom_list();
		expect(')');
		return l;
	}

	AtomSet atom_list() {
		expect('(');
		AtomSet s;
		while (true) {
			skip();
			if (pos_ < text_.size() && text_[pos_] == ')') break;
			s.insert(atom(word()));
		}
		expect(')');
		return s;
	}

	Atom atom(std::string_view name) {
		auto a = table_.find(name);
		if (!a) fail("unknown atom '" + std::string(name) + "'");
		return *a;
	}

	std::string_view word() {
		skip();
		std::size_t start = pos_;
		while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
			++pos_;
		}
		if (start == pos_) fail("expected a name");
		return text_.substr(start, pos_ - start);
	}

	void expect(char c) {
		skip();
		if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
		++pos_;
	}

	void skip() {
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
	}

	[[noreturn]] void fail(const std::string& msg) {
		throw ParseError(msg, SourceSpan{1, pos_ + 1});
	}

	std::string_view text_;
	const AtomTable& table_;
	std::size_t      pos_ = 0;
};

} // namespace

GuardedAtom verify_proof(const ProofTree& tree, const Program& program) {
	const auto& root = ProofChecker(program).check(tree);
	if (!root.is_atom()) throw ProofError("root is not fully resolved");
	return root.as_atom();
}

std::string render_guarded(const GuardedClause& label, const AtomTable& table) {
	std::string out = table.name(label.head);
	if (!label.is_atom()) out += " <- " + join_names(table, label.body, ", ");
	return out + " : {" + join_names(table, label.guard, ", ") + "}";
}

std::string render_proof(const ProofTree& tree, const AtomTable& table) {
	std::string out;
	render_node(tree, table, 0, out);
	return out;
}

std::string proof_to_sexpr(const ProofTree& tree, const AtomTable& table) {
	std::string out;
	sexpr_node(tree, table, out);
	return out;
}

ProofPtr proof_from_sexpr(std::string_view text, const AtomTable& table) {
	SexprReader r(text, table);
	auto t = r.tree();
	r.finish();
	return t;
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------
std::vector<AtomSet> SupportTable::guards(Atom a) const {
	std::vector<AtomSet> out;
	for (const auto& s : supports(a)) out.push_back(s.guard);
	return out;
}

bool SupportTable::same_guards(const SupportTable& other) const {
	if (atom_count() != other.atom_count()) return false;
	for (std::uint32_t i = 0; i != atom_count(); ++i) {
		if (guards(Atom{i}) != other.guards(Atom{i})) return false;
	}
	return true;
}

namespace {

ProofPtr build_proof(const ProofPtr& leaf, std::span<const ProofPtr> parts) {
	ProofPtr p = leaf;
	for (const auto& part : parts) p = ProofTree::resolve(p, part);
	return p;
}

} // namespace

SupportTable saturate_supports(const Program& program, const SupportLimits& limits) {
	struct Entry {
		AtomSet     guard;
		ProofPtr    proof;
		std::size_t round;
	};
	std::size_t n = program.atom_count();
	std::vector<std::vector<Entry>> live(n);
	std::size_t derivations = 0;

	auto insert = [&](Atom head, AtomSet guard, std::size_t round, const std::function<ProofPtr()>& proof) {
		auto& list = live[head.id];
		for (const auto& e : list) {
			if (e.guard.subset_of(guard)) return false;
		}
		std::erase_if(list, [&](const Entry& e) { return guard.subset_of(e.guard); });
		if (list.size() >= limits.max_per_atom) {
			throw ResourceError("support limit of " + std::to_string(limits.max_per_atom) + " exceeded for atom '" +
			                    program.atoms().name(head) + "'");
		}
		list.push_back({std::move(guard), proof(), round});
		return true;
	};

	std::vector<ProofPtr> leaves;
	std::vector<std::vector<Atom>> bodies;
	for (const auto& c : program.clauses()) {
		leaves.push_back(ProofTree::leaf(translate(c)));
		bodies.push_back(c.pos.to_vector());
	}

	bool changed = false;
	for (std::size_t i = 0; i != leaves.size(); ++i) {
		const auto& c = program.clauses()[i];
		if (!c.purely_negative()) continue;
		changed |= insert(c.head, c.neg, 0, [&] { return leaves[i]; });
	}

	for (std::size_t round = 1; changed; ++round) {
		changed = false;
		auto snapshot = live;
		std::size_t delta_round = round - 1;
		for (std::size_t ci = 0; ci != leaves.size(); ++ci) {
			const auto& body = bodies[ci];
			if (body.empty()) continue;
			const auto& clause = program.clauses()[ci];
			std::size_t k = body.size();
			// Semi-naive: position i draws from the previous round's delta,
			// positions before it from anything, positions after it from older
			// entries only.
			for (std::size_t i = 0; i != k; ++i) {
				std::vector<std::vector<const Entry*>> pools(k);
				bool empty = false;
				for (std::size_t j = 0; j != k && !empty; ++j) {
					for (const auto& e : snapshot[body[j].id]) {
						bool take = j < i ? e.round <= delta_round : j == i ? e.round == delta_round : e.round < delta_round;
						if (take) pools[j].push_back(&e);
					}
					empty = pools[j].empty();
				}
				if (empty) continue;
				std::vector<std::size_t> pick(k, 0);
				while (true) {
					if (limits.max_derivations && ++derivations > limits.max_derivations) {
						throw ResourceError("derivation limit of " + std::to_string(limits.max_derivations) + " exceeded");
					}
					AtomSet guard = clause.neg;
					for (std::size_t j = 0; j != k; ++j) guard |= pools[j][pick[j]]->guard;
					changed |= insert(clause.head, std::move(guard), round, [&] {
						std::vector<ProofPtr> parts;
						for (std::size_t j = 0; j != k; ++j) parts.push_back(pools[j][pick[j]]->proof);
						return build_proof(leaves[ci], parts);
					});
					std::size_t j = k;
					while (j > 0 && ++pick[j - 1] == pools[j - 1].size()) pick[--j] = 0;
					if (j == 0) break;
				}
			}
		}
	}

	SupportTable table(n);
	for (std::size_t a = 0; a != n; ++a) {
		auto& list = live[a];
		std::sort(list.begin(), list.end(), [](const Entry& x, const Entry& y) { return x.guard < y.guard; });
		for (auto& e : list) table.entries_[a].push_back({std::move(e.guard), std::move(e.proof)});
	}
	return table;
}

// ---------------------------------------------------------------------------
// Lazy enumeration
// ---------------------------------------------------------------------------
struct SupportStream::Index {
	const Program*                        program;
	std::vector<std::vector<std::size_t>> by_head;
	std::vector<std::vector<Atom>>        bodies;
	std::vector<ProofPtr>                 leaves;

	explicit Index(const Program& p) : program(&p), by_head(p.atom_count()) {
		for (std::size_t i = 0; i != p.clauses().size(); ++i) {
			const auto& c = p.clauses()[i];
			by_head[c.head.id].push_back(i);
			bodies.push_back(c.pos.to_vector());
			leaves.push_back(ProofTree::leaf(translate(c)));
		}
	}
};

struct SupportStream::Frame {
	const Index*                        index;
	Atom                                atom;
	AtomSet                             blocked; // atoms in progress on this branch, including `atom`
	std::size_t                         cursor = 0;
	std::optional<std::size_t>          active;
	std::vector<std::unique_ptr<Frame>> children;
	std::vector<Support>                current;

	Frame(const Index* idx, Atom a, const AtomSet& in_progress) : index(idx), atom(a), blocked(in_progress) {
		blocked.insert(a);
	}

	std::unique_ptr<Frame> child(Atom b) const { return std::make_unique<Frame>(index, b, blocked); }

	Support combine() const {
		std::size_t ci = *active;
		Support s{index->program->clauses()[ci].neg, nullptr};
		std::vector<ProofPtr> parts;
		for (const auto& c : current) {
			s.guard |= c.guard;
			parts.push_back(c.proof);
		}
		s.proof = build_proof(index->leaves[ci], parts);
		return s;
	}

	void reset() {
		active.reset();
		children.clear();
		current.clear();
	}

	std::optional<Support> next() {
		const auto& mine = index->by_head[atom.id];
		while (true) {
			if (!active) {
				while (cursor < mine.size() && index->program->clauses()[mine[cursor]].pos.intersects(blocked)) ++cursor;
				if (cursor == mine.size()) return std::nullopt;
				std::size_t ci = mine[cursor++];
				active = ci;
				bool complete = true;
				for (Atom b : index->bodies[ci]) {
					children.push_back(child(b));
					auto v = children.back()->next();
					if (!v) {
						complete = false;
						break;
					}
					current.push_back(std::move(*v));
				}
				if (!complete) {
					reset();
					continue;
				}
				auto s = combine();
				if (index->bodies[ci].empty()) reset();
				return s;
			}
			// Odometer over the children, last body atom fastest.
			const auto& body = index->bodies[*active];
			for (std::size_t j = children.size(); j-- > 0;) {
				auto v = children[j]->next();
				if (!v) continue;
				current[j] = std::move(*v);
				for (std::size_t l = j + 1; l != children.size(); ++l) {
					children[l] = child(body[l]);
					current[l] = *children[l]->next();
				}
				return combine();
			}
			reset();
		}
	}

	std::size_t state_size() const noexcept {
		std::size_t n = 1 + blocked.size();
		if (active) n += index->bodies[*active].size();
		for (const auto& c : current) n += c.guard.size();
		for (const auto& c : children) n += c->state_size();
		return n;
	}
};

SupportStream::SupportStream(const Program& program, Atom atom)
	: index_(std::make_shared<const Index>(program))
	, root_(std::make_unique<Frame>(index_.get(), atom, AtomSet{})) {}

SupportStream::~SupportStream() = default;
SupportStream::SupportStream(SupportStream&&) noexcept = default;
SupportStream& SupportStream::operator=(SupportStream&&) noexcept = default;

std::optional<Support> SupportStream::next() {
	return root_->next();
}

std::size_t SupportStream::state_size() const noexcept {
	return root_->state_size();
}

std::vector<Support> enumerate_supports(const Program& program, Atom atom) {
	std::vector<Support> out;
	SupportStream s(program, atom);
	while (auto v = s.next()) out.push_back(std::move(*v));
	return out;
}

MinimalSupportStream::MinimalSupportStream(const Program& program, Atom atom)
	: program_(&program), atom_(atom), stream_(program, atom) {}

std::optional<Support> MinimalSupportStream::next() {
	while (auto s = stream_.next()) {
		std::size_t pos = position_++;
		if (minimal(s->guard) && !seen_before(s->guard, pos)) return s;
	}
	return std::nullopt;
}

std::size_t MinimalSupportStream::state_size() const noexcept {
	return stream_.state_size();
}

bool MinimalSupportStream::minimal(const AtomSet& guard) const {
	auto all = AtomSet::universe(program_->atom_count());
	for (Atom x : guard) {
		AtomSet smaller = guard;
		smaller.erase(x);
		if (gl_operator(*program_, all - smaller).contains(atom_)) return false;
	}
	return true;
}

bool MinimalSupportStream::seen_before(const AtomSet& guard, std::size_t position) const {
	SupportStream replay(*program_, atom_);
	for (std::size_t i = 0; i != position; ++i) {
		if (replay.next()->guard == guard) return true;
	}
	return false;
}

} // namespace guardres
