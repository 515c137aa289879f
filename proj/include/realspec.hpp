#pragma once

// Core library: exact arithmetic, rings, the real spectrum and its structure
// sheaf. The text, JSON and command-line layers live in realspec/parse.hpp,
// realspec/serialize.hpp, realspec/explore.hpp and realspec/cli.hpp.

#include "realspec/rational.hpp"
#include "realspec/poly.hpp"
#include "realspec/factor.hpp"
#include "realspec/sturm.hpp"
#include "realspec/ring.hpp"
#include "realspec/certificate.hpp"
#include "realspec/errors.hpp"
#include "realspec/spectrum.hpp"
#include "realspec/sheaf.hpp"
#include "realspec/parse.hpp"
