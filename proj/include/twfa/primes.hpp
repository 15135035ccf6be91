// primes.hpp -- prime table and prime-power factorization
#ifndef TWFA_PRIMES_HPP
#define TWFA_PRIMES_HPP

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "core.hpp"

namespace twfa {

using unary_length = boost::multiprecision::cpp_int;

struct prime_budget_exceeded : error {
	using error::error;
};

// Incremental sieve of Eratosthenes; the limit doubles whenever more primes
// are requested. `budget` caps the index that may be asked for.
class prime_table {
public:
	explicit prime_table(std::size_t budget = 100) : budget_(budget) {}

	std::size_t budget() const noexcept { return budget_; }
	void set_budget(std::size_t b) {
		std::lock_guard lock(mu_);
		budget_ = b;
	}

	// 1-indexed: nth(1) == 2.
	std::uint64_t nth(std::size_t k) {
		if (k == 0)
			throw std::invalid_argument("prime index is 1-based");
		std::lock_guard lock(mu_);
		if (k > budget_)
			throw prime_budget_exceeded("prime #" + std::to_string(k) + " exceeds the budget of " +
				std::to_string(budget_) + " primes");
		while (primes_.size() < k)
			grow();
		return primes_[k - 1];
	}

	// All primes <= bound (no budget check; used for trial division).
	std::vector<std::uint64_t> up_to(std::uint64_t bound) {
		std::lock_guard lock(mu_);
		while (limit_ < bound)
			grow();
		auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
		return {primes_.begin(), end};
	}

private:
	void grow() {
		const std::uint64_t lo = limit_ + 1;
		const std::uint64_t hi = std::max<std::uint64_t>(64, limit_ * 2);
		std::vector<char> composite(hi - lo + 1, 0);
		// sieve the new segment with the known primes, then with new ones
		auto strike = [&](std::uint64_t p) {
			std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
			for (std::uint64_t x = start; x <= hi; x += p)
				composite[x - lo] = 1;
		};
		for (std::uint64_t p : primes_) {
			if (p * p > hi)
				break;
			strike(p);
		}
		for (std::uint64_t x = std::max<std::uint64_t>(lo, 2); x <= hi; ++x)
			if (!composite[x - lo]) {
				primes_.push_back(x);
				if (x * x <= hi)
					strike(x);
			}
		limit_ = hi;
	}

	std::mutex mu_;
	std::size_t budget_;
	std::uint64_t limit_ = 1;
	std::vector<std::uint64_t> primes_;
};

inline prime_table& default_prime_table() {
	static prime_table t;
	return t;
}

inline std::uint64_t nth_prime(std::size_t k) { return default_prime_table().nth(k); }

// Factorization into maximal prime powers, ascending by prime ---------------

inline constexpr std::uint64_t trial_division_bound = 1'000'000;

inline std::vector<unary_length> prime_encode(const unary_length& m) {
	if (m < 1)
		throw std::invalid_argument("prime_encode needs m >= 1");
	std::vector<unary_length> out;
	unary_length rest = m;
	for (std::uint64_t p : default_prime_table().up_to(trial_division_bound)) {
		if (rest == 1)
			break;
		if (unary_length(p) * p > rest)
			break;
		if (rest % p != 0)
			continue;
		unary_length power = 1;
		while (rest % p == 0) {
			rest /= p;
			power *= p;
		}
		out.push_back(power);
	}
	if (rest == 1)
		return out;
	const bool small = rest < unary_length(trial_division_bound) * trial_division_bound;
	if (small || boost::multiprecision::miller_rabin_test(rest, 25)) {
		out.push_back(rest);
		return out;
	}
	throw error("prime_encode: cofactor " + rest.str() + " has no factor below " +
		std::to_string(trial_division_bound));
}

inline unary_length prime_decode(const std::vector<unary_length>& factors) {
	unary_length m = 1;
	for (const auto& z : factors) {
		if (z < 2)
			throw std::invalid_argument("prime power factors must be >= 2");
		m *= z;
	}
	return m;
}

inline std::string format_prime_encoding(const std::vector<unary_length>& factors) {
	std::string s;
	for (std::size_t i = 0; i < factors.size(); ++i) {
		if (i)
			s += '#';
		s += factors[i].str();
	}
	return s;
}

inline unary_length parse_unary_length(const std::string& text) {
	if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
		throw format_error("not a decimal natural number: '" + text + "'");
	return unary_length(text);
}

inline std::vector<unary_length> parse_prime_encoding(const std::string& text) {
	std::vector<unary_length> out;
	if (text.empty())
		return out;
	std::size_t i = 0;
	for (;;) {
		auto j = text.find('#', i);
		out.push_back(parse_unary_length(text.substr(i, j == std::string::npos ? std::string::npos : j - i)));
		if (j == std::string::npos)
			break;
		i = j + 1;
	}
	return out;
}

} // namespace twfa

#endif
