#pragma once

#include <string>

#include "cac/env.hpp"
#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace cac {

// Renders a term in the concrete input syntax. Binder names are taken from
// the hints and primed when they would capture a free variable or shadow a
// symbol, so the output parses back to an alpha-equal term.
std::string to_string(const Term& t, const Signature& sig);

std::string to_string(const Substitution& theta, const Signature& sig);
std::string to_string(const TypingEnv& env, const Signature& sig);

}  // namespace cac
