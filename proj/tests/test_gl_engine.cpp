#include "guardres/gl_engine.hpp"
#include "guardres/parser.hpp"

#include "support/generators.hpp"

#include <doctest.h>

using namespace guardres;

namespace {

Interpretation set_of(const Program& p, std::initializer_list<const char*> names) {
	Interpretation m;
	for (const char* n : names) m.insert(*p.atoms().find(n));
	return m;
}

std::uint64_t mask_of(const AtomSet& s) {
	std::uint64_t b = 0;
	for (Atom a : s) b |= std::uint64_t{1} << a.id;
	return b;
}

// Exhaustive search for a levels certificate with ranks < |M|; tiny inputs only.
bool has_levels_by_search(const Program& p, const Interpretation& m) {
	auto members = m.to_vector();
	std::size_t k = members.size();
	std::size_t combos = 1;
	for (std::size_t i = 0; i != k; ++i) combos *= std::max<std::size_t>(k, 1);
	for (std::size_t code = 0; code != combos; ++code) {
		RankFunction rk(p.atom_count());
		std::size_t x = code;
		for (Atom a : members) {
			rk.set(a, static_cast<unsigned>(x % k));
			x /= k;
		}
		if (verify_levels(p, m, rk)) return true;
	}
	return false;
}

} // namespace

TEST_CASE("gl_reduct") {
	auto p = testing::example_program();
	auto horn = gl_reduct(p, set_of(p, {"p", "q", "t"}));
	REQUIRE(horn.clauses.size() == 3);
	for (const auto& c : horn.clauses) CHECK(c.body.empty());
	CHECK(least_model(horn) == set_of(p, {"p", "q", "t"}));

	auto all = gl_reduct(p, {});
	CHECK(all.clauses.size() == 4);
	CHECK(all.clauses[0].body == std::vector<Atom>{*p.atoms().find("t")});

	auto odd = parse_program("p :- not p.");
	CHECK(gl_reduct(odd, set_of(odd, {"p"})).clauses.empty());
}

TEST_CASE("least_model") {
	auto facts = parse_program("p. q. t.");
	CHECK(least_model(gl_reduct(facts, {})) == AtomSet::universe(3));
	CHECK(least_model(HornProgram{}).empty());
	auto loop = parse_program("a :- b. b :- a.");
	CHECK(least_model(gl_reduct(loop, {})).empty());

	auto chain = parse_program("d :- c. c :- b. b :- a. a. d.");
	auto rk = least_model_ranks(gl_reduct(chain, {}));
	CHECK(*rk[*chain.atoms().find("a")] == 0);
	CHECK(*rk[*chain.atoms().find("b")] == 1);
	CHECK(*rk[*chain.atoms().find("c")] == 2);
	CHECK(*rk[*chain.atoms().find("d")] == 0);
}

TEST_CASE("least_model ranks are the earliest T-stage") {
	// A late clause can give an earlier derivation than the first one found.
	auto p = parse_program("x :- c. c :- b. b :- a. a. x :- a.");
	auto rk = least_model_ranks(gl_reduct(p, {}));
	CHECK(*rk[*p.atoms().find("x")] == 1);
}

TEST_CASE("least_model agrees with naive iteration") {
	std::mt19937_64 rng(21);
	for (int i = 0; i < 300; ++i) {
		auto p = testing::random_program(rng);
		for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.atom_count()); m += 3) {
			CHECK(mask_of(gl_operator(p, AtomSet::from_mask(m))) == testing::naive_gl(p, m));
		}
	}
}

TEST_CASE("gl_operator and is_stable examples") {
	auto p = testing::example_program();
	CHECK(gl_operator(p, set_of(p, {"p", "q", "t"})) == set_of(p, {"p", "q", "t"}));
	CHECK(is_stable(p, set_of(p, {"p", "q", "t"})));
	CHECK(gl_operator(p, {}) == set_of(p, {"p", "q", "t"}));
	CHECK_FALSE(is_stable(p, {}));

	auto odd = parse_program("p :- not p.");
	CHECK(gl_operator(odd, {}) == set_of(odd, {"p"}));
	CHECK(gl_operator(odd, set_of(odd, {"p"})).empty());
	CHECK_FALSE(is_stable(odd, {}));
	CHECK_FALSE(is_stable(odd, set_of(odd, {"p"})));
}

TEST_CASE("brute_force_stable") {
	auto p = testing::example_program();
	CHECK(brute_force_stable(p) == std::vector<Interpretation>{set_of(p, {"p", "q", "t"})});
	CHECK(brute_force_stable(Program{}) == std::vector<Interpretation>{AtomSet{}});
	auto even = parse_program("p :- not q. q :- not p.");
	CHECK(brute_force_stable(even) == std::vector<Interpretation>{set_of(even, {"p"}), set_of(even, {"q"})});

	auto wide = testing::letter_table(21);
	CHECK_THROWS_AS(brute_force_stable(Program(wide, {})), ResourceError);
	CHECK(brute_force_stable(Program(wide, {}), 21).size() == 1);
	CHECK_THROWS_AS(brute_force_stable(Program(wide, {}), 3), ResourceError);
}

TEST_CASE("is_supported") {
	auto p = testing::example_program();
	CHECK(is_supported(p, set_of(p, {"p", "q", "t"})));
	auto self = parse_program("p :- p.");
	CHECK(is_supported(self, set_of(self, {"p"})));
	CHECK_FALSE(is_stable(self, set_of(self, {"p"})));
	CHECK(is_supported(self, {}));
	CHECK_FALSE(is_supported(p, {})); // the empty set is not a model of t.
}

TEST_CASE("compute_levels") {
	auto p = testing::example_program();
	auto m = set_of(p, {"p", "q", "t"});
	auto rk = compute_levels(p, m);
	REQUIRE(rk);
	for (Atom a : m) CHECK(*(*rk)[a] == 0);
	CHECK(rk->domain() == m);
	CHECK(verify_levels(p, m, *rk));

	auto self = parse_program("p :- p.");
	CHECK_FALSE(compute_levels(self, set_of(self, {"p"})));

	auto neg = parse_program("p :- not q.");
	auto none = parse_program("a :- b.");
	auto empty_rk = compute_levels(none, {});
	REQUIRE(empty_rk);
	CHECK(empty_rk->domain().empty());
	CHECK_FALSE(compute_levels(neg, {})); // not a model

	auto chain = parse_program("c :- b, not d. b :- a. a.");
	auto crk = compute_levels(chain, set_of(chain, {"a", "b", "c"}));
	REQUIRE(crk);
	CHECK(*(*crk)[*chain.atoms().find("c")] == 2);
}

TEST_CASE("verify_levels rejects bad certificates") {
	auto chain = parse_program("b :- a. a.");
	auto m = AtomSet::universe(2);
	RankFunction flat(2);
	flat.set(Atom{0}, 0);
	flat.set(Atom{1}, 0);
	CHECK_FALSE(verify_levels(chain, m, flat));
	RankFunction partial(2);
	partial.set(Atom{1}, 1);
	CHECK_FALSE(verify_levels(chain, m, partial));
}

TEST_CASE("is_tight") {
	auto p = testing::example_program();
	auto rk = is_tight(p);
	REQUIRE(rk);
	CHECK(*(*rk)[*p.atoms().find("t")] == 0);
	CHECK(*(*rk)[*p.atoms().find("p")] == 1);
	CHECK(*(*rk)[*p.atoms().find("q")] == 0);
	CHECK(*(*rk)[*p.atoms().find("r")] == 0);
	CHECK(*(*rk)[*p.atoms().find("s")] == 0);

	CHECK_FALSE(is_tight(parse_program("p :- p.")));
	auto negative = parse_program("a :- not b. b :- not a, not c. c :- not c.");
	auto nrk = is_tight(negative);
	REQUIRE(nrk);
	for (Atom a : negative.atoms().atoms()) CHECK(*(*nrk)[a] == 0);
	CHECK_FALSE(is_tight(parse_program("a :- b. b :- c. c :- a.")));
}

TEST_CASE("is_tight_on") {
	auto p = testing::example_program();
	CHECK(is_tight_on(p, set_of(p, {"p", "q", "t"})));
	CHECK(is_tight_on(p, {}));

	auto self = parse_program("p :- p. p.");
	CHECK_FALSE(is_tight_on(self, set_of(self, {"p"}), TightReading::Restricted));
	CHECK_FALSE(is_tight_on(self, set_of(self, {"p"}), TightReading::Literal));

	// The loop is blocked by M: only the restricted reading ignores it.
	auto blocked = parse_program("p :- q, not r. q :- p. p :- not s. q :- not s. r.");
	auto m = set_of(blocked, {"p", "q", "r"});
	CHECK(is_tight_on(blocked, m, TightReading::Restricted));
	CHECK_FALSE(is_tight_on(blocked, m, TightReading::Literal));

	// A positive body atom outside M has no rank under the literal reading.
	auto outside = parse_program("p :- q. p.");
	auto pm = set_of(outside, {"p"});
	CHECK(is_tight_on(outside, pm, TightReading::Restricted));
	CHECK_FALSE(is_tight_on(outside, pm, TightReading::Literal));
}

TEST_CASE("GL operator is antimonotone") {
	std::mt19937_64 rng(3);
	for (int i = 0; i < 200; ++i) {
		auto p = testing::random_program(rng);
		std::uint64_t all = (std::uint64_t{1} << p.atom_count()) - 1;
		for (int k = 0; k < 20; ++k) {
			std::uint64_t small = rng() & all;
			std::uint64_t big   = small | (rng() & all);
			auto gs = gl_operator(p, AtomSet::from_mask(small));
			auto gb = gl_operator(p, AtomSet::from_mask(big));
			CHECK(gb.subset_of(gs));
		}
	}
}

TEST_CASE("stable models are supported, and stable iff levels") {
	auto programs = testing::corpus(5, 200);
	for (const auto& p : programs) {
		auto stable = brute_force_stable(p);
		CHECK(stable == testing::naive_stable(p));
		for (const auto& m : stable) CHECK(is_supported(p, m));
		for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.atom_count()); ++mask) {
			auto m = AtomSet::from_mask(mask);
			auto rk = compute_levels(p, m);
			CHECK(is_stable(p, m) == rk.has_value());
			if (rk) CHECK(verify_levels(p, m, *rk));
		}
	}
}

TEST_CASE("compute_levels agrees with exhaustive rank search on tiny programs") {
	auto programs = testing::corpus(17, 150, {.min_atoms = 1, .max_atoms = 4, .max_clauses = 7});
	for (const auto& p : programs) {
		for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.atom_count()); ++mask) {
			auto m = AtomSet::from_mask(mask);
			CHECK(compute_levels(p, m).has_value() == has_levels_by_search(p, m));
		}
	}
}

TEST_CASE("tight programs: supported iff stable") {
	auto programs = testing::corpus(9, 200, {.tight = true});
	for (const auto& p : programs) {
		REQUIRE(is_tight(p));
		for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.atom_count()); ++mask) {
			auto m = AtomSet::from_mask(mask);
			CHECK(is_supported(p, m) == is_stable(p, m));
		}
	}
}

TEST_CASE("supported and tight on M implies stable") {
	auto programs = testing::corpus(13, 300);
	for (const auto& p : programs) {
		for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.atom_count()); ++mask) {
			auto m = AtomSet::from_mask(mask);
			if (!is_supported(p, m)) continue;
			for (auto reading : {TightReading::Restricted, TightReading::Literal}) {
				if (is_tight_on(p, m, reading)) CHECK(is_stable(p, m));
			}
		}
	}
}
