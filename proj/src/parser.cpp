#include "guardres/parser.hpp"

#include <cctype>

namespace guardres {
namespace {

enum class Tok { Ident, Not, If, Comma, Dot, LBrace, RBrace, End };

struct Token {
	Tok              kind;
	std::string_view text;
	SourceSpan       span;
};

const char* describe(Tok t) {
	switch (t) {
		case Tok::Ident:  return "atom";
		case Tok::Not:    return "'not'";
		case Tok::If:     return "':-'";
		case Tok::Comma:  return "','";
		case Tok::Dot:    return "'.'";
		case Tok::LBrace: return "'{'";
		case Tok::RBrace: return "'}'";
		case Tok::End:    return "end of input";
	}
	return "?";
}

class Lexer {
public:
	explicit Lexer(std::string_view text) : text_(text) {}

	Token next() {
		skip_blank();
		SourceSpan at{line_, col_};
		if (pos_ >= text_.size()) return {Tok::End, {}, at};
		char c = text_[pos_];
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t start = pos_;
			while (pos_ < text_.size() &&
			       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
				advance();
			}
			auto word = text_.substr(start, pos_ - start);
			return {word == "not" ? Tok::Not : Tok::Ident, word, at};
		}
		if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
			advance();
			advance();
			return {Tok::If, text_.substr(pos_ - 2, 2), at};
		}
		Tok kind;
		switch (c) {
			case ',': kind = Tok::Comma; break;
			case '.': kind = Tok::Dot; break;
			case '{': kind = Tok::LBrace; break;
			case '}': kind = Tok::RBrace; break;
			default:
				throw ParseError(std::string("unexpected character '") + c + "'", at);
		}
		advance();
		return {kind, text_.substr(pos_ - 1, 1), at};
	}

private:
	void advance() {
		if (text_[pos_] == '\n') {
			++line_;
			col_ = 1;
		}
		else {
			++col_;
		}
		++pos_;
	}

	void skip_blank() {
		while (pos_ < text_.size()) {
			char c = text_[pos_];
			if (c == '%') {
				while (pos_ < text_.size() && text_[pos_] != '\n') advance();
			}
			else if (std::isspace(static_cast<unsigned char>(c))) {
				advance();
			}
			else {
				break;
			}
		}
	}

	std::string_view text_;
	std::size_t      pos_  = 0;
	std::size_t      line_ = 1;
	std::size_t      col_  = 1;
};

class Parser {
public:
	explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

	Program program() {
		auto table = std::make_shared<AtomTable>();
		std::vector<Clause> clauses;
		while (tok_.kind != Tok::End) clauses.push_back(clause(*table));
		return Program(std::move(table), std::move(clauses));
	}

	Interpretation interpretation(const AtomTable& table) {
		expect(Tok::LBrace);
		Interpretation m;
		if (tok_.kind != Tok::RBrace) {
			while (true) {
				if (tok_.kind != Tok::Ident) fail("expected atom");
				auto a = table.find(tok_.text);
				if (!a) fail("unknown atom '" + std::string(tok_.text) + "'");
				m.insert(*a);
				shift();
				if (tok_.kind != Tok::Comma) break;
				shift();
			}
		}
		expect(Tok::RBrace);
		if (tok_.kind != Tok::End) fail("trailing input after '}'");
		return m;
	}

private:
	Clause clause(AtomTable& table) {
		if (tok_.kind == Tok::Not) fail("'not' in head position");
		if (tok_.kind == Tok::If) fail("empty head");
		if (tok_.kind != Tok::Ident) fail("expected clause head, found " + std::string(describe(tok_.kind)));
		Clause c{table.intern(tok_.text), {}, {}};
		shift();
		if (tok_.kind == Tok::If) {
			shift();
			while (true) {
				literal(table, c);
				if (tok_.kind != Tok::Comma) break;
				shift();
			}
		}
		expect(Tok::Dot);
		return c;
	}

	void literal(AtomTable& table, Clause& c) {
		if (tok_.kind == Tok::Not) {
			Token neg = tok_;
			shift();
			if (tok_.kind != Tok::Ident) throw ParseError("'not' must be followed by an atom", neg.span);
			c.neg.insert(table.intern(tok_.text));
			shift();
			return;
		}
		if (tok_.kind != Tok::Ident) fail("expected literal, found " + std::string(describe(tok_.kind)));
		c.pos.insert(table.intern(tok_.text));
		shift();
	}

	void expect(Tok kind) {
		if (tok_.kind != kind) {
			fail(std::string("expected ") + describe(kind) + ", found " + describe(tok_.kind));
		}
		shift();
	}

	void shift() { tok_ = lex_.next(); }

	[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok_.span); }

	Lexer lex_;
	Token tok_{Tok::End, {}, {}};
};

void append_list(std::string& out, const AtomTable& table, const AtomSet& set, const char* prefix, bool& first) {
	for (Atom a : set) {
		if (!first) out += ", ";
		out += prefix;
		out += table.name(a);
		first = false;
	}
}

} // namespace

Program parse_program(std::string_view text) {
	return Parser(text).program();
}

Interpretation parse_interpretation(std::string_view text, const AtomTable& table) {
	return Parser(text).interpretation(table);
}

std::string render_program(const Program& program) {
	const auto& table = program.atoms();
	std::string out;
	for (const auto& c : program.clauses()) {
		out += table.name(c.head);
		if (!c.is_fact()) {
			out += " :- ";
			bool first = true;
			append_list(out, table, c.pos, "", first);
			append_list(out, table, c.neg, "not ", first);
		}
		out += ".\n";
	}
	return out;
}

} // namespace guardres
