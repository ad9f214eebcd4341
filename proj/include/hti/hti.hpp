#pragma once

// Umbrella header for the interval type theory kernel.

#include "hti/conversion.hpp"
#include "hti/diagnostics.hpp"
#include "hti/elaborate.hpp"
#include "hti/eval.hpp"
#include "hti/generate.hpp"
#include "hti/oracle.hpp"
#include "hti/pretty.hpp"
#include "hti/suites.hpp"
#include "hti/surface.hpp"
#include "hti/term.hpp"
#include "hti/typecheck.hpp"
#include "hti/value.hpp"
