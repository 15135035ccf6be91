// report.hpp -- state-count tables for the witness families
#ifndef TWFA_REPORT_HPP
#define TWFA_REPORT_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "families.hpp"
#include "transform.hpp"

namespace twfa {

struct report_row {
	family_spec spec;
	std::size_t states = 0;
	std::string min_one_way; // "-" for nondeterministic two-way machines
	std::string max_reversals; // over inputs of length <= 2n+4; "-" unless deterministic two-way
};

inline report_row report_for(const family_spec& spec) {
	report_row r{spec, 0, "-", "-"};
	auto g = generate(spec);
	r.states = num_states_of(g.machine);
	if (auto p = std::get_if<one_way_machine>(&g.machine)) {
		r.min_one_way = std::to_string(minimize(determinize(*p)).num_states());
		return r;
	}
	const auto& t = std::get<two_way_machine>(g.machine);
	if (!t.is_deterministic())
		return r;
	const auto sweeping = spec.var == variant::rotating ? rotating_to_sweeping(t) : t;
	r.min_one_way = std::to_string(minimize(shepherdson(sweeping)).num_states());
	r.max_reversals = std::to_string(max_reversals(t, 2 * spec.n + 4).max_reversals);
	return r;
}

inline std::vector<report_row> report_state_counts(const std::vector<family_spec>& specs) {
	std::vector<report_row> rows;
	rows.reserve(specs.size());
	for (const auto& s : specs)
		rows.push_back(report_for(s));
	return rows;
}

inline const std::vector<std::string>& report_header() {
	static const std::vector<std::string> h{"family", "n", "variant", "states", "min_one_way_states", "max_reversals"};
	return h;
}

inline std::vector<std::string> report_cells(const report_row& r) {
	return {family_name(r.spec.fam), std::to_string(r.spec.n), variant_name(r.spec.var), std::to_string(r.states),
		r.min_one_way, r.max_reversals};
}

inline std::string format_csv(const std::vector<report_row>& rows) {
	std::ostringstream out;
	auto line = [&](const std::vector<std::string>& cells) {
		for (std::size_t i = 0; i < cells.size(); ++i)
			out << (i ? "," : "") << cells[i];
		out << '\n';
	};
	line(report_header());
	for (const auto& r : rows)
		line(report_cells(r));
	return out.str();
}

inline std::string format_table(const std::vector<report_row>& rows) {
	std::vector<std::vector<std::string>> cells{report_header()};
	for (const auto& r : rows)
		cells.push_back(report_cells(r));
	std::vector<std::size_t> width(report_header().size(), 0);
	for (const auto& row : cells)
		for (std::size_t i = 0; i < row.size(); ++i)
			width[i] = std::max(width[i], row[i].size());
	std::ostringstream out;
	for (const auto& row : cells) {
		for (std::size_t i = 0; i < row.size(); ++i) {
			out << row[i];
			if (i + 1 < row.size())
				out << std::string(width[i] - row[i].size() + 2, ' ');
		}
		out << '\n';
	}
	return out.str();
}

} // namespace twfa

#endif
