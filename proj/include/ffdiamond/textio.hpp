#pragma once

#include <string>
#include <string_view>

#include "ffdiamond/poly.hpp"

namespace ffd {

/// Canonical element text: prime-field elements print as decimal residues,
/// extension elements as bracketed coefficient lists over the base context,
/// constant coefficient first, e.g. "[1,0,1]". Input additionally accepts the
/// generator shorthand "g" / "g^k" and decimal residues (embedded constants,
/// reduced mod p).
std::string format_elem(const FieldElem& a);
FieldElem parse_elem(std::string_view text, const CtxPtr& ctx);

/// Canonical polynomial text: descending powers, no spaces, '*' between
/// coefficient and power, unit coefficients omitted, extension coefficients
/// bracketed; the zero polynomial prints "0".
/// Grammar for input: terms `c`, `x`, `x^k`, `c*x^k` joined by '+'/'-';
/// whitespace is ignored; repeated powers accumulate.
std::string format_poly(const Poly& f);
Poly parse_poly(std::string_view text, const CtxPtr& ctx);

/// Tower specification: "p=<prime>" followed by zero or more
/// ",mod=<poly over the context built so far>" extensions.
CtxPtr parse_field_spec(std::string_view text, std::uint64_t cap = UINT64_MAX);
std::string format_field_spec(const CtxPtr& ctx);

}  // namespace ffd
