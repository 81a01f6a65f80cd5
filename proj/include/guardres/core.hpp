#pragma once

// Shared vocabulary: interned atoms, atom sets, normal clauses, programs.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace guardres {

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// 1-based position inside some source text.
struct SourceSpan {
	std::size_t line   = 1;
	std::size_t column = 1;
	friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public Error {
public:
	ParseError(const std::string& message, SourceSpan span);
	SourceSpan span() const noexcept { return span_; }
	const std::string& message() const noexcept { return message_; }
private:
	std::string message_;
	SourceSpan  span_;
};

/// Raised when a configured work or size cap would be exceeded.
class ResourceError : public Error {
public:
	using Error::Error;
};

struct Atom {
	std::uint32_t id = 0;
	friend auto operator<=>(Atom, Atom) = default;
};

/// Dense bitset over atom ids.
///
/// The word vector never carries trailing zero words, so two sets with the
/// same members compare equal regardless of how they were built.
/// Ordering compares the sets as binary numbers in which atom 0 is the least
/// significant bit; this is the "bitmask order" used for every enumeration.
class AtomSet {
public:
	class const_iterator {
	public:
		using iterator_category = std::forward_iterator_tag;
		using value_type        = Atom;
		using difference_type   = std::ptrdiff_t;
		using pointer           = const Atom*;
		using reference         = Atom;

		const_iterator() = default;
		Atom operator*() const { return Atom{static_cast<std::uint32_t>(pos_)}; }
		const_iterator& operator++() { pos_ = set_->next_from(pos_ + 1); return *this; }
		const_iterator operator++(int) { auto t = *this; ++*this; return t; }
		friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.pos_ == b.pos_; }
	private:
		friend class AtomSet;
		const_iterator(const AtomSet* s, std::size_t p) : set_(s), pos_(p) {}
		const AtomSet* set_ = nullptr;
		std::size_t    pos_ = 0;
	};

	AtomSet() = default;
	AtomSet(std::initializer_list<Atom> atoms);
	template <class It>
	AtomSet(It first, It last) { for (; first != last; ++first) insert(*first); }

	/// Set whose members are the 1-bits of `mask`.
	static AtomSet from_mask(std::uint64_t mask);
	/// {0, ..., n-1}
	static AtomSet universe(std::size_t n);

	void insert(Atom a);
	void erase(Atom a);
	bool contains(Atom a) const noexcept;
	bool empty() const noexcept { return words_.empty(); }
	std::size_t size() const noexcept;

	bool intersects(const AtomSet& other) const noexcept;
	bool subset_of(const AtomSet& other) const noexcept;

	AtomSet& operator|=(const AtomSet& other);
	AtomSet& operator&=(const AtomSet& other);
	AtomSet& operator-=(const AtomSet& other);
	friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
	friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
	friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

	const_iterator begin() const { return {this, next_from(0)}; }
	const_iterator end() const { return {this, limit()}; }
	std::vector<Atom> to_vector() const;
	/// Largest id + 1, or 0 for the empty set.
	std::size_t extent() const noexcept;

	std::size_t hash() const noexcept;

	friend bool operator==(const AtomSet&, const AtomSet&) = default;
	friend std::strong_ordering operator<=>(const AtomSet& a, const AtomSet& b) noexcept;

private:
	std::size_t limit() const noexcept { return words_.size() * 64; }
	std::size_t next_from(std::size_t pos) const noexcept;
	void trim() noexcept;

	std::vector<std::uint64_t> words_;
};

struct AtomSetHash {
	std::size_t operator()(const AtomSet& s) const noexcept { return s.hash(); }
};

using Interpretation = AtomSet;

/// Name <-> id bijection. Ids are dense and assigned in insertion order.
class AtomTable {
public:
	static bool is_identifier(std::string_view name) noexcept;

	/// Returns the existing atom for `name` or registers a new one.
	/// Throws ParseError if `name` is not an identifier.
	Atom intern(std::string_view name);
	std::optional<Atom> find(std::string_view name) const;
	const std::string& name(Atom a) const { return names_.at(a.id); }
	std::size_t size() const noexcept { return names_.size(); }
	std::vector<Atom> atoms() const;

private:
	std::vector<std::string>                     names_;
	std::unordered_map<std::string, std::uint32_t> ids_;
};

/// head <- pos, not neg
struct Clause {
	Atom    head;
	AtomSet pos;
	AtomSet neg;

	bool is_fact() const noexcept { return pos.empty() && neg.empty(); }
	bool purely_negative() const noexcept { return pos.empty(); }
	/// 1 + |pos| + |neg|
	std::size_t size() const noexcept { return 1 + pos.size() + neg.size(); }
	friend bool operator==(const Clause&, const Clause&) = default;
};

struct ClauseHash {
	std::size_t operator()(const Clause& c) const noexcept;
};

/// A finite normal program. Immutable once built; duplicate clauses are
/// dropped keeping the first occurrence so input order is preserved.
class Program {
public:
	Program();
	Program(std::shared_ptr<const AtomTable> atoms, std::vector<Clause> clauses);

	const AtomTable& atoms() const noexcept { return *atoms_; }
	const std::shared_ptr<const AtomTable>& atom_table() const noexcept { return atoms_; }
	std::size_t atom_count() const noexcept { return atoms_->size(); }
	std::span<const Clause> clauses() const noexcept { return clauses_; }
	/// Number of atoms plus total literal count over all clauses.
	std::size_t size() const noexcept;

private:
	std::shared_ptr<const AtomTable> atoms_;
	std::vector<Clause>              clauses_;
};

bool satisfies_clause(const Interpretation& m, const Clause& c) noexcept;
/// M is a (classical) model of every clause in P.
bool is_model(const Interpretation& m, const Program& p) noexcept;
/// M satisfies the body of C (pos inside M, neg outside).
bool body_holds(const Interpretation& m, const Clause& c) noexcept;

/// "{a, b}" with names in lexicographic order.
std::string format_atoms(const AtomTable& table, const AtomSet& set);
/// Member names, sorted.
std::vector<std::string> atom_names(const AtomTable& table, const AtomSet& set);

} // namespace guardres
