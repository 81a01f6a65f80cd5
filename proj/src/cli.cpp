#include "guardres/cli.hpp"

#include "guardres/completion.hpp"
#include "guardres/gl_engine.hpp"
#include "guardres/guarded.hpp"
#include "guardres/parser.hpp"
#include "guardres/sat.hpp"
#include "guardres/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace guardres::cli {
namespace {

struct Settings {
	std::string file = "-";
	std::string engine = "candidate";
	std::size_t limit = 0;
	std::size_t jobs = 1;
	std::size_t cap = kDefaultEnumerationCap;
	bool certs = false;
	bool prune = false;
	std::string atom;
	bool proofs = false;
	std::string on_model;
	bool literal = false;
	std::string model;
	long candidate = -1;
};

class UsageError : public Error {
public:
	using Error::Error;
};

std::string read_input(const std::string& path, std::istream& in) {
	if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
	std::ifstream f(path, std::ios::binary);
	if (!f) throw UsageError("cannot read '" + path + "'");
	return {std::istreambuf_iterator<char>(f), {}};
}

void print_rank_table(std::ostream& out, const AtomTable& table, const RankFunction& ranks) {
	for (Atom a : table.atoms()) {
		if (auto r = ranks[a]) out << table.name(a) << ": " << *r << "\n";
	}
}

int cmd_solve(const Settings& s, const Program& program, std::ostream& out) {
	if (s.certs && s.engine != "candidate") throw UsageError("--certs requires --engine candidate");
	std::vector<Interpretation> models;
	std::vector<std::string> certs;
	if (s.engine == "candidate") {
		SolveOptions opts;
		if (s.limit) opts.limit = s.limit;
		opts.jobs  = s.jobs;
		opts.prune = s.prune;
		for (auto& sm : solve_stable(program, opts)) {
			if (s.certs) certs.push_back(render_certificate(sm.certificate, program.atoms()));
			models.push_back(std::move(sm.model));
		}
	}
	else {
		models = s.engine == "brute" ? brute_force_stable(program, s.cap)
		                             : models_of_completion(build_completion(program), s.cap);
		if (s.limit && models.size() > s.limit) models.resize(s.limit);
	}

	std::vector<std::size_t> order(models.size());
	for (std::size_t i = 0; i != order.size(); ++i) order[i] = i;
	std::vector<std::vector<std::string>> names;
	for (const auto& m : models) names.push_back(atom_names(program.atoms(), m));
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
	for (std::size_t i : order) {
		out << format_atoms(program.atoms(), models[i]) << "\n";
		if (s.certs) out << certs[i];
	}
	return models.empty() ? kNoModels : kModelsFound;
}

int cmd_supports(const Settings& s, const Program& program, std::ostream& out) {
	auto atom = program.atoms().find(s.atom);
	if (!atom) throw UsageError("unknown atom '" + s.atom + "'");
	auto table = saturate_supports(program);
	for (const auto& sup : table.supports(*atom)) {
		out << format_atoms(program.atoms(), sup.guard) << "\n";
		if (!s.proofs) continue;
		std::istringstream lines(render_proof(*sup.proof, program.atoms()));
		for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
	}
	return kModelsFound;
}

int cmd_check_tight(const Settings& s, const Program& program, std::ostream& out) {
	std::optional<RankFunction> ranks;
	if (s.on_model.empty()) {
		ranks = is_tight(program);
	}
	else {
		auto m = parse_interpretation(s.on_model, program.atoms());
		ranks = is_tight_on(program, m, s.literal ? TightReading::Literal : TightReading::Restricted);
	}
	if (!ranks) {
		out << "not tight\n";
		return kNotTight;
	}
	out << "tight\n";
	print_rank_table(out, program.atoms(), *ranks);
	return kModelsFound;
}

int cmd_check_model(const Settings& s, const Program& program, std::ostream& out) {
	auto m = parse_interpretation(s.model, program.atoms());
	auto verdict = [](bool b) { return b ? "yes" : "no"; };
	out << "stable: " << verdict(is_stable(program, m)) << "\n";
	out << "supported: " << verdict(is_supported(program, m)) << "\n";
	auto levels = compute_levels(program, m);
	out << "has-levels: " << verdict(levels.has_value()) << "\n";
	if (levels) print_rank_table(out, program.atoms(), *levels);
	return kModelsFound;
}

int cmd_to_dimacs(const Settings& s, const Program& program, std::ostream& out) {
	if (s.candidate < 0) {
		out << export_dimacs(program_to_cnf(program));
		return kModelsFound;
	}
	CandidateStream stream(program);
	for (long i = 0;; ++i) {
		auto cand = stream.next();
		if (!cand) throw UsageError("candidate index " + std::to_string(s.candidate) + " out of range");
		if (i == s.candidate) {
			out << export_dimacs(cand->to_cnf());
			return kModelsFound;
		}
	}
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
	CLI::App app{"Stable models of ground normal logic programs via guarded resolution", "guardres"};
	app.require_subcommand(1);
	Settings s;

	auto file_arg = [&](CLI::App* sub) { sub->add_option("file", s.file, "Program file (.lp), '-' for stdin"); };

	auto* solve = app.add_subcommand("solve", "Print the stable models");
	file_arg(solve);
	solve->add_option("--engine", s.engine, "candidate | completion | brute")
	    ->check(CLI::IsMember({"candidate", "completion", "brute"}));
	solve->add_option("--limit", s.limit, "Stop after N models")->check(CLI::PositiveNumber);
	solve->add_option("--jobs", s.jobs, "Worker threads for the candidate engine")->check(CLI::PositiveNumber);
	solve->add_option("--cap", s.cap, "Atom cap for exhaustive engines");
	solve->add_flag("--certs", s.certs, "Print the candidate theory and proofs behind each model");
	solve->add_flag("--prune", s.prune, "Skip candidates subsumed by a simpler one");

	auto* supports = app.add_subcommand("supports", "Print the minimal supports of an atom");
	file_arg(supports);
	supports->add_option("--atom", s.atom, "Atom name")->required();
	supports->add_flag("--proofs", s.proofs, "Print a proof tree under each support");

	auto* completion = app.add_subcommand("completion", "Print the defining equations");
	file_arg(completion);

	auto* negate = app.add_subcommand("negate", "Print an equivalent purely negative program");
	file_arg(negate);

	auto* tight = app.add_subcommand("check-tight", "Check tightness, globally or on a model");
	file_arg(tight);
	tight->add_option("--on", s.on_model, "Interpretation, e.g. \"{a, b}\"");
	tight->add_flag("--literal", s.literal, "Let clauses with unsatisfied bodies contribute");

	auto* check = app.add_subcommand("check-model", "Report stable/supported/has-levels for an interpretation");
	file_arg(check);
	check->add_option("--model", s.model, "Interpretation, e.g. \"{a, b}\"")->required();

	auto* dimacs = app.add_subcommand("to-dimacs", "Export the program or a candidate theory as DIMACS CNF");
	file_arg(dimacs);
	dimacs->add_option("--candidate", s.candidate, "0-based candidate index")->check(CLI::NonNegativeNumber);

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	}
	catch (const CLI::CallForHelp&) {
		out << app.help();
		return kModelsFound;
	}
	catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n" << app.help();
		return kUsage;
	}

	try {
		Program program = parse_program(read_input(s.file, in));
		if (solve->parsed()) return cmd_solve(s, program, out);
		if (supports->parsed()) return cmd_supports(s, program, out);
		if (completion->parsed()) {
			out << render_completion(build_completion(program));
			return kModelsFound;
		}
		if (negate->parsed()) {
			out << render_program(dung_transform(program));
			return kModelsFound;
		}
		if (tight->parsed()) return cmd_check_tight(s, program, out);
		if (check->parsed()) return cmd_check_model(s, program, out);
		if (dimacs->parsed()) return cmd_to_dimacs(s, program, out);
	}
	catch (const ParseError& e) {
		err << (s.file == "-" ? "<stdin>" : s.file) << ":" << e.what() << "\n";
		return kUsage;
	}
	catch (const UsageError& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	}
	catch (const ResourceError& e) {
		err << "resource limit: " << e.what() << "\n";
		return kResource;
	}
	catch (const std::exception& e) {
		err << "internal error: " << e.what() << "\n";
		return kFailure;
	}
	return kUsage;
}

} // namespace guardres::cli
