#include "guardres/completion.hpp"
#include "guardres/gl_engine.hpp"
#include "guardres/parser.hpp"

#include "support/generators.hpp"

#include <doctest.h>

using namespace guardres;

namespace {

Atom at(const Program& p, const char* name) { return *p.atoms().find(name); }

AtomSet set_of(const Program& p, std::initializer_list<const char*> names) {
	AtomSet s;
	for (const char* n : names) s.insert(at(p, n));
	return s;
}

// Completion built from every derivable guard rather than only the minimal ones.
CompletionTheory unpruned_completion(const Program& p) {
	auto all = testing::all_supports(p);
	CompletionTheory t{p.atom_table(), {}};
	for (Atom a : p.atoms().atoms()) {
		Equation eq{a, Equation::Shape::Negative, {}};
		for (auto g : all[a.id]) eq.supports.push_back(AtomSet::from_mask(g));
		if (!eq.supports.empty()) eq.shape = Equation::Shape::Equiv;
		t.equations.push_back(std::move(eq));
	}
	return t;
}

} // namespace

TEST_CASE("make_equation shapes") {
	Atom p{0}, q{1};
	CHECK(make_equation(p, {}).shape == Equation::Shape::Negative);
	CHECK(make_equation(p, {AtomSet{}}).shape == Equation::Shape::Positive);
	auto eq = make_equation(p, {AtomSet{q}});
	CHECK(eq.shape == Equation::Shape::Equiv);
	CHECK(eq.supports == std::vector<AtomSet>{AtomSet{q}});
}

TEST_CASE("build_completion on the example program") {
	auto p  = testing::example_program();
	auto ep = build_completion(p);
	REQUIRE(ep.equations.size() == 5);
	const auto& eqp = ep.equations[at(p, "p").id];
	CHECK(eqp.shape == Equation::Shape::Equiv);
	CHECK(eqp.supports == std::vector<AtomSet>{set_of(p, {"q"}), set_of(p, {"r"})});
	CHECK(ep.equations[at(p, "q").id].supports == std::vector<AtomSet>{set_of(p, {"s"})});
	CHECK(ep.equations[at(p, "t").id].shape == Equation::Shape::Positive);
	CHECK(ep.equations[at(p, "r").id].shape == Equation::Shape::Negative);
	CHECK(ep.equations[at(p, "s").id].shape == Equation::Shape::Negative);
	CHECK(render_completion(ep) == "p <-> -q | -r\nt.\nq <-> -s\n-r.\n-s.\n");
	CHECK(models_of_completion(ep) == std::vector<Interpretation>{set_of(p, {"p", "q", "t"})});
}

TEST_CASE("build_completion small cases") {
	auto odd = parse_program("p :- not p.");
	auto eo  = build_completion(odd);
	CHECK(eo.equations[0].shape == Equation::Shape::Equiv);
	CHECK(eo.equations[0].supports == std::vector<AtomSet>{AtomSet{Atom{0}}});
	CHECK(render_equation(eo.equations[0], odd.atoms()) == "p <-> -p");
	CHECK(models_of_completion(eo).empty());

	auto table = testing::letter_table(1);
	auto empty = build_completion(Program(table, {}));
	CHECK(empty.equations[0].shape == Equation::Shape::Negative);
	CHECK(models_of_completion(empty) == std::vector<Interpretation>{AtomSet{}});

	CompletionTheory t_only{table, {make_equation(Atom{0}, {AtomSet{}})}};
	CHECK(models_of_completion(t_only) == std::vector<Interpretation>{AtomSet{Atom{0}}});
}

TEST_CASE("render_equation with conjunctive disjuncts") {
	auto p  = parse_program("p :- not a, not b. p :- not c.");
	auto ep = build_completion(p);
	CHECK(render_equation(ep.equations[0], p.atoms()) == "p <-> -a & -b | -c");
}

TEST_CASE("models_of_completion respects the cap") {
	auto table = testing::letter_table(22);
	auto ep    = build_completion(Program(table, {}));
	CHECK_THROWS_AS(models_of_completion(ep), ResourceError);
	CHECK(models_of_completion(ep, 22).size() == 1);
}

TEST_CASE("completion_to_cnf keeps the original atoms first") {
	auto p   = testing::example_program();
	auto cnf = completion_to_cnf(build_completion(p));
	CHECK(cnf.variable_count() >= 5);
	for (std::uint32_t i = 0; i != 5; ++i) CHECK(cnf.atoms().name(Atom{i}) == p.atoms().name(Atom{i}));
}

TEST_CASE("dung_transform examples") {
	auto p = testing::example_program();
	auto d = dung_transform(p);
	CHECK(render_program(d) == "p :- not q.\np :- not r.\nt.\nq :- not s.\n");
	CHECK(equivalent(p, d));

	auto odd = parse_program("p :- not p.");
	CHECK(render_program(dung_transform(odd)) == "p :- not p.\n");

	auto redundant = parse_program("p :- not q. p :- not q, not r. q :- not p.");
	CHECK(render_program(dung_transform(redundant)) == "p :- not q.\nq :- not p.\n");
}

TEST_CASE("equivalent examples") {
	auto a = parse_program("p :- not q.");
	auto b = parse_program("q :- not p.");
	CHECK_FALSE(equivalent(a, b));
	CHECK(equivalent(a, a));
	// Different id orders, same meaning.
	CHECK(equivalent(parse_program("a. b :- a."), parse_program("b. a.")));
}

TEST_CASE("completion models are exactly the stable models") {
	auto programs = testing::corpus(53, 300);
	for (const auto& p : programs) {
		auto ep     = build_completion(p);
		auto oracle = testing::naive_stable(p);
		CHECK(models_of_completion(ep) == oracle);
		for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.atom_count()); ++m) {
			auto im = AtomSet::from_mask(m);
			CHECK(ep.satisfied_by(im) == std::binary_search(oracle.begin(), oracle.end(), im));
		}
	}
}

TEST_CASE("equation shapes follow the support table") {
	auto programs = testing::corpus(59, 200);
	for (const auto& p : programs) {
		auto table = saturate_supports(p);
		auto ep    = build_completion(p, table);
		for (Atom a : p.atoms().atoms()) {
			const auto& eq = ep.equations[a.id];
			auto guards    = table.guards(a);
			if (guards.empty()) CHECK(eq.shape == Equation::Shape::Negative);
			else if (guards.front().empty()) CHECK(eq.shape == Equation::Shape::Positive);
			else CHECK(eq.shape == Equation::Shape::Equiv);
			if (eq.shape == Equation::Shape::Positive) CHECK(guards.size() == 1);
		}
	}
}

TEST_CASE("restricting to minimal supports does not change the models") {
	auto programs = testing::corpus(61, 150, {.min_atoms = 1, .max_atoms = 6, .max_clauses = 9});
	for (const auto& p : programs) {
		auto full = unpruned_completion(p);
		auto mini = build_completion(p);
		for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.atom_count()); ++m) {
			auto im = AtomSet::from_mask(m);
			CHECK(full.satisfied_by(im) == mini.satisfied_by(im));
		}
	}
}

TEST_CASE("purely negative transform is equivalent and proves the same guarded atoms") {
	auto programs = testing::corpus(67, 300);
	for (const auto& p : programs) {
		auto d = dung_transform(p);
		for (const auto& c : d.clauses()) CHECK(c.pos.empty());
		CHECK(equivalent(p, d));
		CHECK(testing::naive_stable(d) == testing::naive_stable(p));
		CHECK(saturate_supports(p).same_guards(saturate_supports(d)));
		// A second application changes nothing.
		CHECK(render_program(dung_transform(d)) == render_program(d));
	}
}
