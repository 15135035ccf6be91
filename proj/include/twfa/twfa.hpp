// twfa.hpp -- umbrella header
#ifndef TWFA_TWFA_HPP
#define TWFA_TWFA_HPP

#include "analysis.hpp"
#include "core.hpp"
#include "families.hpp"
#include "primes.hpp"
#include "report.hpp"
#include "text_format.hpp"
#include "transform.hpp"
#include "unary_gap.hpp"

#endif
