#include "ffdiamond/textio.hpp"

#include <cctype>
#include <sstream>

namespace ffd {

namespace {

[[noreturn]] void syntax_error(std::string_view text, std::size_t pos, const std::string& what) {
  fail(Errc::SyntaxError,
       what + " at position " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
}

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::uint64_t number() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      syntax_error(s, pos, "expected a number");
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(s[pos] - '0');
      if (v > (UINT64_MAX - d) / 10) syntax_error(s, pos, "number too large");
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }
};

FieldElem parse_elem_at(Cursor& c, const CtxPtr& ctx) {
  c.skip_ws();
  if (c.pos >= c.s.size()) syntax_error(c.s, c.pos, "expected an element");
  const char ch = c.s[c.pos];
  if (ch == '[') {
    if (ctx->is_prime_field())
      fail(Errc::CoefficientOutOfField, "bracketed coefficients need an extension field");
    ++c.pos;
    std::vector<FieldElem> parts;
    if (!c.eat(']')) {
      for (;;) {
        parts.push_back(parse_elem_at(c, ctx->base()));
        if (c.eat(']')) break;
        if (!c.eat(',')) syntax_error(c.s, c.pos, "expected ',' or ']'");
      }
    }
    if (parts.size() != ctx->degree())
      fail(Errc::CoefficientOutOfField,
           "expected " + std::to_string(ctx->degree()) + " coefficients, got " +
               std::to_string(parts.size()));
    std::vector<std::uint64_t> flat;
    flat.reserve(ctx->total_degree());
    for (const auto& p : parts) flat.insert(flat.end(), p.flat().begin(), p.flat().end());
    return ctx->from_flat(std::move(flat));
  }
  if (ch == 'g') {
    ++c.pos;
    std::uint64_t e = 1;
    if (c.pos < c.s.size() && c.s[c.pos] == '^') {
      ++c.pos;
      e = c.number();
    }
    return ctx->generator().pow(e);
  }
  if (std::isdigit(static_cast<unsigned char>(ch))) return ctx->from_residue(c.number());
  syntax_error(c.s, c.pos, "expected an element");
}

}  // namespace

std::string format_elem(const FieldElem& a) {
  if (a.ctx()->is_prime_field()) return std::to_string(a.flat()[0]);
  std::string out = "[";
  bool first = true;
  for (const auto& c : a.coeffs()) {
    if (!first) out += ',';
    out += format_elem(c);
    first = false;
  }
  out += ']';
  return out;
}

FieldElem parse_elem(std::string_view text, const CtxPtr& ctx) {
  Cursor c{text};
  FieldElem e = parse_elem_at(c, ctx);
  if (!c.done()) syntax_error(text, c.pos, "trailing input");
  return e;
}

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    FieldElem c = f.coeff(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << format_elem(c);
      continue;
    }
    if (!c.is_one()) os << format_elem(c) << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

Poly parse_poly(std::string_view text, const CtxPtr& ctx) {
  Cursor c{text};
  std::vector<FieldElem> coeffs;
  auto add_term = [&](const FieldElem& k, std::uint64_t deg, bool negate) {
    if (deg > 4096) syntax_error(text, c.pos, "exponent too large");
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, ctx->zero());
    coeffs[deg] = negate ? coeffs[deg] - k : coeffs[deg] + k;
  };
  bool negate = false;
  if (c.eat('-')) negate = true;
  for (;;) {
    // one term: [coeff [*]] [x [^k]]
    FieldElem k = ctx->one();
    bool have_coeff = false;
    c.skip_ws();
    if (c.pos < c.s.size() && c.s[c.pos] != 'x') {
      k = parse_elem_at(c, ctx);
      have_coeff = true;
    }
    std::uint64_t deg = 0;
    bool have_power = false;
    if (have_coeff) {
      if (c.eat('*')) {
        if (!c.eat('x')) syntax_error(text, c.pos, "expected 'x'");
        have_power = true;
      }
    } else {
      if (!c.eat('x')) syntax_error(text, c.pos, "expected a term");
      have_power = true;
    }
    if (have_power) {
      deg = 1;
      if (c.eat('^')) deg = c.number();
    }
    add_term(k, deg, negate);
    if (c.done()) break;
    if (c.eat('+')) negate = false;
    else if (c.eat('-')) negate = true;
    else syntax_error(text, c.pos, "expected '+' or '-'");
  }
  return Poly(ctx, std::move(coeffs));
}

CtxPtr parse_field_spec(std::string_view text, std::uint64_t cap) {
  // split on top-level commas (commas inside brackets belong to elements)
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '[') {
      ++depth;
    } else if (text[i] == ']') {
      --depth;
    }
  }
  if (parts.empty() || parts[0].substr(0, 2) != "p=")
    fail(Errc::SyntaxError, "field spec must start with p=<prime>: \"" + std::string(text) + "\"");
  Cursor c{parts[0].substr(2)};
  const std::uint64_t p = c.number();
  if (!c.done()) syntax_error(parts[0], c.pos, "trailing input after prime");
  CtxPtr ctx = FieldCtx::make_prime(p);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].substr(0, 4) != "mod=")
      fail(Errc::SyntaxError, "expected mod=<polynomial> in field spec: \"" +
                                  std::string(parts[i]) + "\"");
    ctx = FieldCtx::extend(ctx, parse_poly(parts[i].substr(4), ctx), cap);
  }
  return ctx;
}

std::string format_field_spec(const CtxPtr& ctx) {
  if (ctx->is_prime_field()) return "p=" + std::to_string(ctx->characteristic());
  Poly modulus(ctx->base(), [&] {
    auto low = ctx->modulus_coeffs();
    low.push_back(ctx->base()->one());
    return low;
  }());
  return format_field_spec(ctx->base()) + ",mod=" + format_poly(modulus);
}

}  // namespace ffd
