#pragma once

// Convenience umbrella for the whole library.

#include "arith.hpp"
#include "congruence.hpp"
#include "hecke.hpp"
#include "holproj.hpp"
#include "hurwitz.hpp"
#include "qseries.hpp"
#include "rational.hpp"
#include "table.hpp"
