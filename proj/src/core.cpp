#include "guardres/core.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace guardres {

ParseError::ParseError(const std::string& message, SourceSpan span)
	: Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message)
	, message_(message)
	, span_(span) {}

// ---------------------------------------------------------------------------
// AtomSet
// ---------------------------------------------------------------------------
AtomSet::AtomSet(std::initializer_list<Atom> atoms) {
	for (Atom a : atoms) insert(a);
}

AtomSet AtomSet::from_mask(std::uint64_t mask) {
	AtomSet s;
	if (mask) s.words_.push_back(mask);
	return s;
}

AtomSet AtomSet::universe(std::size_t n) {
	AtomSet s;
	s.words_.assign((n + 63) / 64, ~std::uint64_t{0});
	if (n % 64) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
	return s;
}

void AtomSet::insert(Atom a) {
	std::size_t w = a.id / 64;
	if (w >= words_.size()) words_.resize(w + 1, 0);
	words_[w] |= std::uint64_t{1} << (a.id % 64);
}

void AtomSet::erase(Atom a) {
	std::size_t w = a.id / 64;
	if (w >= words_.size()) return;
	words_[w] &= ~(std::uint64_t{1} << (a.id % 64));
	trim();
}

bool AtomSet::contains(Atom a) const noexcept {
	std::size_t w = a.id / 64;
	return w < words_.size() && (words_[w] >> (a.id % 64)) & 1u;
}

std::size_t AtomSet::size() const noexcept {
	std::size_t n = 0;
	for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
	return n;
}

bool AtomSet::intersects(const AtomSet& other) const noexcept {
	std::size_t n = std::min(words_.size(), other.words_.size());
	for (std::size_t i = 0; i != n; ++i) {
		if (words_[i] & other.words_[i]) return true;
	}
	return false;
}

bool AtomSet::subset_of(const AtomSet& other) const noexcept {
	if (words_.size() > other.words_.size()) return false;
	for (std::size_t i = 0; i != words_.size(); ++i) {
		if (words_[i] & ~other.words_[i]) return false;
	}
	return true;
}

AtomSet& AtomSet::operator|=(const AtomSet& other) {
	if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
	for (std::size_t i = 0; i != other.words_.size(); ++i) words_[i] |= other.words_[i];
	return *this;
}

AtomSet& AtomSet::operator&=(const AtomSet& other) {
	if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
	for (std::size_t i = 0; i != words_.size(); ++i) words_[i] &= other.words_[i];
	trim();
	return *this;
}

AtomSet& AtomSet::operator-=(const AtomSet& other) {
	std::size_t n = std::min(words_.size(), other.words_.size());
	for (std::size_t i = 0; i != n; ++i) words_[i] &= ~other.words_[i];
	trim();
	return *this;
}

std::vector<Atom> AtomSet::to_vector() const {
	return {begin(), end()};
}

std::size_t AtomSet::extent() const noexcept {
	if (words_.empty()) return 0;
	return (words_.size() - 1) * 64 + (64 - static_cast<std::size_t>(std::countl_zero(words_.back())));
}

std::size_t AtomSet::hash() const noexcept {
	std::size_t h = 0xcbf29ce484222325ull;
	for (auto w : words_) {
		h ^= static_cast<std::size_t>(w);
		h *= 0x100000001b3ull;
		h ^= h >> 29;
	}
	return h;
}

std::strong_ordering operator<=>(const AtomSet& a, const AtomSet& b) noexcept {
	if (auto c = a.words_.size() <=> b.words_.size(); c != 0) return c;
	for (std::size_t i = a.words_.size(); i-- > 0;) {
		if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
	}
	return std::strong_ordering::equal;
}

std::size_t AtomSet::next_from(std::size_t pos) const noexcept {
	std::size_t w = pos / 64;
	if (w >= words_.size()) return limit();
	std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (pos % 64));
	while (true) {
		if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
		if (++w == words_.size()) return limit();
		bits = words_[w];
	}
}

void AtomSet::trim() noexcept {
	while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

// ---------------------------------------------------------------------------
// AtomTable
// ---------------------------------------------------------------------------
bool AtomTable::is_identifier(std::string_view name) noexcept {
	auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
	auto digit = [](char c) { return c >= '0' && c <= '9'; };
	if (name.empty() || !alpha(name.front())) return false;
	return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || digit(c); });
}

Atom AtomTable::intern(std::string_view name) {
	if (!is_identifier(name)) {
		throw ParseError("invalid atom name '" + std::string(name) + "'", SourceSpan{});
	}
	std::string key(name);
	if (auto it = ids_.find(key); it != ids_.end()) return Atom{it->second};
	auto id = static_cast<std::uint32_t>(names_.size());
	names_.push_back(key);
	ids_.emplace(std::move(key), id);
	return Atom{id};
}

std::optional<Atom> AtomTable::find(std::string_view name) const {
	if (auto it = ids_.find(std::string(name)); it != ids_.end()) return Atom{it->second};
	return std::nullopt;
}

std::vector<Atom> AtomTable::atoms() const {
	std::vector<Atom> out;
	out.reserve(names_.size());
	for (std::uint32_t i = 0; i != names_.size(); ++i) out.push_back(Atom{i});
	return out;
}

// ---------------------------------------------------------------------------
// Program
// ---------------------------------------------------------------------------
std::size_t ClauseHash::operator()(const Clause& c) const noexcept {
	std::size_t h = c.head.id;
	h = h * 31 + c.pos.hash();
	h = h * 31 + c.neg.hash();
	return h;
}

Program::Program() : atoms_(std::make_shared<AtomTable>()) {}

Program::Program(std::shared_ptr<const AtomTable> atoms, std::vector<Clause> clauses)
	: atoms_(atoms ? std::move(atoms) : std::make_shared<AtomTable>()) {
	std::size_t n = atoms_->size();
	std::unordered_set<Clause, ClauseHash> seen;
	clauses_.reserve(clauses.size());
	for (auto& c : clauses) {
		if (c.head.id >= n || c.pos.extent() > n || c.neg.extent() > n) {
			throw Error("clause refers to an atom outside the atom table");
		}
		if (seen.insert(c).second) clauses_.push_back(std::move(c));
	}
}

std::size_t Program::size() const noexcept {
	std::size_t n = atom_count();
	for (const auto& c : clauses_) n += c.size();
	return n;
}

bool body_holds(const Interpretation& m, const Clause& c) noexcept {
	return c.pos.subset_of(m) && !c.neg.intersects(m);
}

bool satisfies_clause(const Interpretation& m, const Clause& c) noexcept {
	return !body_holds(m, c) || m.contains(c.head);
}

bool is_model(const Interpretation& m, const Program& p) noexcept {
	return std::all_of(p.clauses().begin(), p.clauses().end(),
	                   [&](const Clause& c) { return satisfies_clause(m, c); });
}

std::vector<std::string> atom_names(const AtomTable& table, const AtomSet& set) {
	std::vector<std::string> names;
	for (Atom a : set) names.push_back(table.name(a));
	std::sort(names.begin(), names.end());
	return names;
}

std::string format_atoms(const AtomTable& table, const AtomSet& set) {
	std::string out = "{";
	bool first = true;
	for (const auto& n : atom_names(table, set)) {
		if (!first) out += ", ";
		out += n;
		first = false;
	}
	return out + "}";
}

} // namespace guardres
