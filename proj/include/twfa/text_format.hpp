// text_format.hpp -- line-oriented automaton files
//
//   kind: <1dfa|1nfa|2dfa|2nfa>
//   alphabet: <tokens>
//   states: <tokens>
//   initial: <token>
//   accepting: <tokens>
//   accept-mode: <anywhere|right-end|left-end>     (two-way only)
//   start-cell: <0|1>                              (two-way only)
//   t: <state> <symbol|'|-'|'-|'> -> <state> <L|R|S|W>
//
// `#` starts a comment. Nondeterminism is written as repeated `t:` lines.
// One-way transitions omit the move letter.
#ifndef TWFA_TEXT_FORMAT_HPP
#define TWFA_TEXT_FORMAT_HPP

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace twfa {

inline const char* move_letter(move d) {
	switch (d) {
	case move::left: return "L";
	case move::right: return "R";
	case move::stay: return "S";
	case move::wrap: return "W";
	}
	return "?";
}

inline const char* accept_mode_name(accept_mode m) {
	switch (m) {
	case accept_mode::anywhere: return "anywhere";
	case accept_mode::on_right_end: return "right-end";
	case accept_mode::on_left_end: return "left-end";
	}
	return "?";
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
	std::istringstream in(s);
	std::vector<std::string> out;
	for (std::string tok; in >> tok;)
		out.push_back(tok);
	return out;
}

inline std::string join(const std::vector<std::string>& v) {
	std::string out;
	for (std::size_t i = 0; i < v.size(); ++i) {
		if (i)
			out += ' ';
		out += v[i];
	}
	return out;
}

inline std::string tape_symbol_token(const alphabet& sigma, tape_symbol t) {
	switch (t.type()) {
	case tape_symbol::kind::left_end: return "|-";
	case tape_symbol::kind::right_end: return "-|";
	default: return sigma.name(t.symbol());
	}
}

} // namespace detail

inline std::string serialize(const two_way_machine& m) {
	std::ostringstream out;
	out << "kind: " << (m.is_deterministic() ? "2dfa" : "2nfa") << '\n';
	out << "alphabet: " << detail::join(m.sigma().names()) << '\n';
	out << "states: " << detail::join(m.state_names()) << '\n';
	out << "initial: " << m.state_name(m.initial()) << '\n';
	std::vector<std::string> acc;
	for (state_id q : m.accepting())
		acc.push_back(m.state_name(q));
	out << "accepting: " << detail::join(acc) << '\n';
	out << "accept-mode: " << accept_mode_name(m.mode()) << '\n';
	out << "start-cell: " << (m.start() == start_cell::cell0 ? 0 : 1) << '\n';
	for (state_id q = 0; q < m.num_states(); ++q)
		for (std::size_t col = 0; col < m.columns(); ++col) {
			auto on = tape_symbol::from_column(col, m.sigma().size());
			for (const auto& st : m.transitions(q, on))
				out << "t: " << m.state_name(q) << ' ' << detail::tape_symbol_token(m.sigma(), on) << " -> "
					<< m.state_name(st.target) << ' ' << move_letter(st.dir) << '\n';
		}
	return out.str();
}

inline std::string serialize(const one_way_machine& m) {
	std::ostringstream out;
	out << "kind: " << (m.is_deterministic() ? "1dfa" : "1nfa") << '\n';
	out << "alphabet: " << detail::join(m.sigma().names()) << '\n';
	out << "states: " << detail::join(m.state_names()) << '\n';
	out << "initial: " << m.state_name(m.initial()) << '\n';
	std::vector<std::string> acc;
	for (state_id q : m.accepting())
		acc.push_back(m.state_name(q));
	out << "accepting: " << detail::join(acc) << '\n';
	for (state_id q = 0; q < m.num_states(); ++q)
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			for (state_id t : m.successors(q, a))
				out << "t: " << m.state_name(q) << ' ' << m.sigma().name(a) << " -> " << m.state_name(t) << '\n';
	return out.str();
}

inline std::string serialize(const any_machine& m) {
	return std::visit([](const auto& x) { return serialize(x); }, m);
}

inline any_machine parse_machine(std::istream& in) {
	std::map<std::string, std::string> header;
	struct raw_transition {
		std::size_t line;
		std::vector<std::string> tokens;
	};
	std::vector<raw_transition> raw;
	std::string line;
	std::size_t lineno = 0;
	auto fail = [&](std::size_t ln, const std::string& msg) -> format_error {
		return format_error("line " + std::to_string(ln) + ": " + msg);
	};
	while (std::getline(in, line)) {
		++lineno;
		if (auto h = line.find('#'); h != std::string::npos)
			line.erase(h);
		auto colon = line.find(':');
		auto toks = detail::split_ws(line);
		if (toks.empty())
			continue;
		if (colon == std::string::npos)
			throw fail(lineno, "expected 'key: value'");
		auto key_toks = detail::split_ws(line.substr(0, colon));
		if (key_toks.size() != 1)
			throw fail(lineno, "malformed key");
		const std::string key = key_toks[0];
		std::string value = line.substr(colon + 1);
		if (key == "t") {
			raw.push_back({lineno, detail::split_ws(value)});
			continue;
		}
		static const char* known[] = {"kind", "alphabet", "states", "initial", "accepting", "accept-mode", "start-cell"};
		if (std::find(std::begin(known), std::end(known), key) == std::end(known))
			throw fail(lineno, "unknown key '" + key + "'");
		if (header.count(key))
			throw fail(lineno, "duplicate key '" + key + "'");
		header[key] = value;
	}
	for (const char* k : {"kind", "alphabet", "states", "initial"})
		if (!header.count(k))
			throw format_error(std::string("missing '") + k + ":' line");

	auto kind_toks = detail::split_ws(header["kind"]);
	if (kind_toks.size() != 1)
		throw format_error("malformed kind");
	const std::string kind = kind_toks[0];
	const bool two_way = kind == "2dfa" || kind == "2nfa";
	if (!two_way && kind != "1dfa" && kind != "1nfa")
		throw format_error("unknown kind '" + kind + "'");

	auto sym_names = detail::split_ws(header["alphabet"]);
	for (const auto& s : sym_names)
		if (!is_valid_token(s))
			throw format_error("invalid symbol name '" + s + "'");
	alphabet sigma(sym_names);
	if (sigma.size() != sym_names.size() || [&] {
			for (std::size_t i = 0; i < sym_names.size(); ++i)
				if (sigma.find(sym_names[i]) != i)
					return true;
			return false;
		}())
		throw format_error("duplicate symbol name");

	auto state_names = detail::split_ws(header["states"]);
	if (state_names.empty())
		throw format_error("no states declared");
	std::map<std::string, state_id> sidx;
	for (const auto& s : state_names) {
		if (!is_valid_token(s))
			throw format_error("invalid state name '" + s + "'");
		if (!sidx.emplace(s, static_cast<state_id>(sidx.size())).second)
			throw format_error("duplicate state name '" + s + "'");
	}
	auto lookup_state = [&](const std::string& s, std::size_t ln) {
		auto it = sidx.find(s);
		if (it == sidx.end())
			throw fail(ln, "unknown state '" + s + "'");
		return it->second;
	};
	auto init_toks = detail::split_ws(header["initial"]);
	if (init_toks.size() != 1)
		throw format_error("exactly one initial state expected");
	const state_id init = lookup_state(init_toks[0], 0);
	std::vector<state_id> acc;
	for (const auto& s : detail::split_ws(header["accepting"]))
		acc.push_back(lookup_state(s, 0));

	if (!two_way) {
		if (header.count("accept-mode") || header.count("start-cell"))
			throw format_error("accept-mode/start-cell are only meaningful for two-way machines");
		one_way_machine m(sigma, state_names);
		m.set_initial(init);
		for (state_id q : acc)
			m.add_accepting(q);
		for (const auto& r : raw) {
			const auto& t = r.tokens;
			if (!(t.size() == 4 || (t.size() == 5 && t[4] == "R")) || t[2] != "->")
				throw fail(r.line, "expected 't: <state> <symbol> -> <state>'");
			auto a = sigma.find(t[1]);
			if (!a)
				throw fail(r.line, "unknown symbol '" + t[1] + "'");
			m.add_transition(lookup_state(t[0], r.line), *a, lookup_state(t[3], r.line));
		}
		if (kind == "1dfa" && !m.is_deterministic())
			throw format_error("kind 1dfa but transitions are nondeterministic");
		return m;
	}

	two_way_machine m(sigma, state_names);
	m.set_initial(init);
	for (state_id q : acc)
		m.add_accepting(q);
	if (header.count("accept-mode")) {
		auto v = detail::split_ws(header["accept-mode"]);
		if (v.size() != 1)
			throw format_error("malformed accept-mode");
		if (v[0] == "anywhere")
			m.set_accept_mode(accept_mode::anywhere);
		else if (v[0] == "right-end")
			m.set_accept_mode(accept_mode::on_right_end);
		else if (v[0] == "left-end")
			m.set_accept_mode(accept_mode::on_left_end);
		else
			throw format_error("unknown accept-mode '" + v[0] + "'");
	}
	if (header.count("start-cell")) {
		auto v = detail::split_ws(header["start-cell"]);
		if (v.size() != 1 || (v[0] != "0" && v[0] != "1"))
			throw format_error("start-cell must be 0 or 1");
		m.set_start_cell(v[0] == "0" ? start_cell::cell0 : start_cell::cell1);
	}
	for (const auto& r : raw) {
		const auto& t = r.tokens;
		if (t.size() != 5 || t[2] != "->")
			throw fail(r.line, "expected 't: <state> <symbol> -> <state> <L|R|S|W>'");
		tape_symbol on = tape_symbol::left_end();
		if (t[1] == "|-")
			on = tape_symbol::left_end();
		else if (t[1] == "-|")
			on = tape_symbol::right_end();
		else if (auto a = sigma.find(t[1]))
			on = tape_symbol::of(*a);
		else
			throw fail(r.line, "unknown symbol '" + t[1] + "'");
		move d;
		if (t[4] == "L")
			d = move::left;
		else if (t[4] == "R")
			d = move::right;
		else if (t[4] == "S")
			d = move::stay;
		else if (t[4] == "W")
			d = move::wrap;
		else
			throw fail(r.line, "unknown move '" + t[4] + "'");
		if (d == move::wrap && on != tape_symbol::right_end())
			throw fail(r.line, "W is legal only on -|");
		m.add_transition(lookup_state(t[0], r.line), on, lookup_state(t[3], r.line), d);
	}
	if (kind == "2dfa" && !m.is_deterministic())
		throw format_error("kind 2dfa but transitions are nondeterministic");
	if (auto v = validate(m); !v.empty())
		throw format_error(v.front());
	return m;
}

inline any_machine parse_machine(const std::string& text) {
	std::istringstream in(text);
	return parse_machine(in);
}

inline any_machine load_machine(const std::string& path) {
	std::ifstream in(path);
	if (!in)
		throw error("cannot open '" + path + "'");
	return parse_machine(in);
}

} // namespace twfa

#endif
