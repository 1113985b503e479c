// ffdiamond: composed products of polynomials over finite fields, exhaustive
// cancellation/equivalence checkers, and irreducible-witness sweeps.
//
// Exit codes: 0 success/property holds; 1 invalid input or internal error;
// 2 a witness sweep found an exhausted task; 3 a checked property fails with
// a counterexample; 4 enumeration budget exceeded.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ffdiamond/composed.hpp"
#include "ffdiamond/conjecture.hpp"
#include "ffdiamond/textio.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOpts {
  std::vector<std::string> field_parts;
  std::uint64_t seed = ffd::kDefaultSeed;
  std::uint64_t budget = ffd::Limits{}.budget;
  std::uint64_t cap = UINT64_MAX;
  unsigned shards = 1;
  bool json = false;
  ffd::Limits limits() const { return ffd::Limits{budget, cap}; }
  // --field may be given once ("p=2,mod=...") or repeated per tower level
  std::string field() const {
    if (field_parts.empty()) return "p=2";
    std::string out = field_parts[0];
    for (std::size_t i = 1; i < field_parts.size(); ++i) out += "," + field_parts[i];
    return out;
  }
};

void add_global_opts(CLI::App* cmd, GlobalOpts& g, bool with_field = true) {
  if (with_field)
    cmd->add_option("--field", g.field_parts,
                    "field spec, e.g. p=2 or p=2,mod=x^2+x+1 (repeatable for towers)");
  cmd->add_option("--seed", g.seed, "64-bit seed for every randomized step");
  cmd->add_option("--budget", g.budget, "enumeration budget (candidate cap)");
  cmd->add_option("--cap", g.cap, "field cardinality cap");
  cmd->add_option("--shards", g.shards, "worker shard count for sweeps");
  cmd->add_flag("--json", g.json, "machine-readable JSON on stdout");
}

ffd::DiamondOp parse_op(const std::string& text, const ffd::CtxPtr& ctx) {
  if (text == "add") return ffd::DiamondOp::add();
  if (text == "mul") return ffd::DiamondOp::mul();
  if (text.rfind("phi=", 0) == 0)
    return ffd::DiamondOp::bivar(ffd::parse_bivar(text.substr(4), ctx));
  ffd::fail(ffd::Errc::SyntaxError, "--op must be add, mul, or phi=<bivariate polynomial>");
}

ordered_json json_header(const std::string& command, const GlobalOpts& g) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["seed"] = g.seed;
  return j;
}

int run_compose(const GlobalOpts& g, const std::string& ftext, const std::string& gtext,
                const std::string& optext) {
  ffd::CtxPtr ctx = ffd::parse_field_spec(g.field(), g.cap);
  ffd::Poly f = ffd::parse_poly(ftext, ctx);
  ffd::Poly gp = ffd::parse_poly(gtext, ctx);
  ffd::DiamondOp op = parse_op(optext, ctx);
  ffd::Poly prod = ffd::composed_product(f, gp, op, g.seed, g.limits());
  const bool irr = ffd::is_irreducible(prod);
  if (g.json) {
    ordered_json j = json_header("compose", g);
    j["field"] = ffd::format_field_spec(ctx);
    j["f"] = ffd::format_poly(f);
    j["g"] = ffd::format_poly(gp);
    j["op"] = op.describe();
    j["composed"] = ffd::format_poly(prod);
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : prod.coeffs()) coeffs.push_back(ffd::format_elem(c));
    j["coefficients"] = std::move(coeffs);
    j["irreducible"] = irr;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "field: " << ffd::format_field_spec(ctx) << "\n";
    std::cout << "composed: " << ffd::format_poly(prod) << "\n";
    std::cout << "irreducible: " << (irr ? "true" : "false") << "\n";
  }
  return 0;
}

int run_check(const GlobalOpts& g, const std::string& what, const std::string& ftext,
              const std::string& psitext, const std::string& phitext, const std::string& optext,
              std::uint64_t m, std::uint64_t n, const std::string& range) {
  ffd::CtxPtr ctx = ffd::parse_field_spec(g.field(), g.cap);
  const ffd::Limits lim = g.limits();

  if (what == "irred") {
    if (ftext.empty()) ffd::fail(ffd::Errc::SyntaxError, "check --what irred needs --f");
    ffd::Poly f = ffd::parse_poly(ftext, ctx);
    const bool irr = ffd::is_irreducible(f);
    if (g.json) {
      ordered_json j = json_header("check", g);
      j["what"] = "irred";
      j["f"] = ffd::format_poly(f);
      j["irreducible"] = irr;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "irreducible: " << (irr ? "true" : "false") << "\n";
    }
    return irr ? 0 : 3;
  }

  if (what == "weak-cancel") {
    ffd::DiamondOp op = !phitext.empty()
                            ? ffd::DiamondOp::bivar(ffd::parse_bivar(phitext, ctx))
                            : parse_op(optext.empty() ? "add" : optext, ctx);
    ffd::CancellationRange cr = ffd::CancellationRange::frobenius_orbit;
    if (range == "full") cr = ffd::CancellationRange::full;
    else if (range != "orbit")
      ffd::fail(ffd::Errc::SyntaxError, "--range must be orbit or full");
    ffd::WeakCancellation r = ffd::weak_cancellation(op, ctx, m, n, lim, cr);
    if (g.json) {
      ordered_json j = json_header("check", g);
      j["what"] = "weak-cancel";
      j["m"] = m;
      j["n"] = n;
      j["op"] = op.describe();
      j["result"] = ffd::to_json(r);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "weak cancellation on (" << m << "," << n << "): "
                << (r.holds ? "holds" : "fails") << "\n";
      if (r.cex) std::cout << "counterexample: " << r.cex->describe() << "\n";
    }
    return r.holds ? 0 : 3;
  }

  if (what == "restricted-inj") {
    if (psitext.empty()) ffd::fail(ffd::Errc::SyntaxError, "check --what restricted-inj needs --psi");
    ffd::Poly psi = ffd::parse_poly(psitext, ctx);
    ffd::RestrictedInjectivity r = ffd::restricted_injectivity(psi, m, lim);
    if (g.json) {
      ordered_json j = json_header("check", g);
      j["what"] = "restricted-inj";
      j["psi"] = ffd::format_poly(psi);
      j["m"] = m;
      j["result"] = ffd::to_json(r);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "restricted injectivity on degree-" << m << " generators: "
                << (r.holds ? "holds" : "fails") << "\n";
      if (r.cex)
        std::cout << "counterexample: alpha=" << ffd::format_elem(r.cex->first)
                  << " k=" << r.cex->second << "\n";
    }
    return r.holds ? 0 : 3;
  }

  if (what == "bc-verify") {
    ffd::DiamondOp op = !phitext.empty()
                            ? ffd::DiamondOp::bivar(ffd::parse_bivar(phitext, ctx))
                            : parse_op(optext.empty() ? "add" : optext, ctx);
    ffd::BrawleyCarlitz r = ffd::brawley_carlitz_verify(ctx, m, n, op, g.seed, lim);
    if (g.json) {
      ordered_json j = json_header("check", g);
      j["what"] = "bc-verify";
      j["op"] = op.describe();
      j["result"] = r.to_json();
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "pairs checked: " << r.irreducible_pairs
                << " (irreducible products: " << r.products_irreducible
                << "), reducible samples: " << r.reducible_samples << "\n";
      std::cout << "equivalence: " << (r.equivalence_holds ? "holds" : "VIOLATED") << "\n";
      if (!r.violation.empty()) std::cout << "violation: " << r.violation << "\n";
    }
    return r.equivalence_holds ? 0 : 3;
  }

  if (what == "prop-e3") {
    ffd::FourWay r = ffd::four_way_equivalence(ctx, m, n, lim);
    if (g.json) {
      ordered_json j = json_header("check", g);
      j["what"] = "prop-e3";
      j["m"] = m;
      j["n"] = n;
      j["result"] = r.to_json();
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "construction: " << r.via_construction
                << " injectivity-failure: " << r.via_injectivity
                << " value-set: " << r.via_value_set
                << " shifted-irreducible: " << r.via_shifted_irreducible << "\n";
      std::cout << "all four agree: " << (r.consistent ? "yes" : "NO") << "\n";
    }
    return 0;  // consistency violations throw EquivalenceViolation
  }

  ffd::fail(ffd::Errc::SyntaxError,
            "--what must be irred, weak-cancel, restricted-inj, bc-verify or prop-e3");
}

int run_find(const GlobalOpts& g, std::uint64_t p, std::uint64_t k, std::uint64_t l,
             const std::string& strategy) {
  ffd::Strategy s = ffd::Strategy::automatic;
  if (strategy == "exhaustive") s = ffd::Strategy::exhaustive;
  else if (strategy == "fast-only" || strategy == "fast_only") s = ffd::Strategy::fast_only;
  else if (strategy != "auto")
    ffd::fail(ffd::Errc::SyntaxError, "--strategy must be auto, exhaustive or fast-only");

  ffd::SearchResult r = ffd::find_witness({p, k, l}, s, g.seed, g.limits());
  if (g.json) {
    ordered_json j = json_header("conjecture-find", g);
    j["p"] = p;
    j["k"] = k;
    j["l"] = l;
    j["result"] = ffd::to_json(r);
    std::cout << j.dump() << "\n";
  } else if (r.exhausted) {
    std::cout << "EXHAUSTED: no witness for (p,k,l)=(" << p << "," << k << "," << l
              << ") after " << r.tested << " candidates\n";
    std::cout << "this contradicts the conjectured existence; please report it\n";
  } else {
    std::cout << "witness: " << ffd::format_poly(r.witness->f) << "\n";
    std::cout << "c0: " << ffd::format_elem(r.witness->c0) << "\n";
    std::cout << "strategy: " << r.witness->strategy << "\n";
  }
  return r.exhausted ? 2 : 0;
}

int run_sweep(const GlobalOpts& g, std::uint64_t bound, const std::string& out) {
  ffd::SweepReport rep = ffd::verify_range(bound, g.shards, g.seed, g.limits());
  std::string body = g.json ? rep.to_json().dump() + "\n" : rep.text();
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    if (!os) ffd::fail(ffd::Errc::SyntaxError, "cannot open output file " + out);
    os << body;
    std::cout << "tasks " << rep.rows.size() << " exhausted " << rep.exhausted_count
              << " -> " << out << "\n";
  } else {
    std::cout << body;
  }
  return rep.exhausted_count ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composed products and irreducibility searches over finite fields"};
  app.require_subcommand(1);
  GlobalOpts g;

  auto* compose = app.add_subcommand("compose", "composed product of two monic polynomials");
  std::string ftext, gtext, optext = "add";
  add_global_opts(compose, g);
  compose->add_option("--f", ftext, "left polynomial")->required();
  compose->add_option("--g", gtext, "right polynomial")->required();
  compose->add_option("--op", optext, "add | mul | phi=<bivariate polynomial>");

  auto* check = app.add_subcommand("check", "exhaustive property checkers");
  std::string what, cftext, psitext, phitext, coptext, range = "orbit";
  std::uint64_t m = 2, n = 3;
  add_global_opts(check, g);
  check->add_option("--what", what, "irred | weak-cancel | restricted-inj | bc-verify | prop-e3")
      ->required();
  check->add_option("--f", cftext, "polynomial for --what irred");
  check->add_option("--psi", psitext, "univariate polynomial for restricted-inj");
  check->add_option("--phi", phitext, "bivariate diamond polynomial");
  check->add_option("--op", coptext, "add | mul | phi=<bivariate polynomial>");
  check->add_option("--m", m, "left generator-set degree");
  check->add_option("--n", n, "right generator-set degree");
  check->add_option("--range", range,
                    "weak-cancel pair range: orbit (Frobenius conjugates, default) | full");

  auto* conj = app.add_subcommand("conjecture", "irreducible-witness search and sweeps");
  conj->require_subcommand(1);
  auto* find = conj->add_subcommand("find", "witness for one (p, k, l)");
  std::uint64_t p = 2, k = 1, l = 1;
  std::string strategy = "auto";
  add_global_opts(find, g, false);
  find->add_option("--p", p, "characteristic (prime)")->required();
  find->add_option("--k", k, "base-field extension degree")->required();
  find->add_option("--l", l, "witness degree")->required();
  find->add_option("--strategy", strategy, "auto | exhaustive | fast-only");

  auto* sweep = conj->add_subcommand("sweep", "witness search for every p^(kl) <= bound");
  std::uint64_t bound = 0;
  std::string outfile;
  add_global_opts(sweep, g, false);
  sweep->add_option("--bound", bound, "upper bound for p^(kl)")->required();
  sweep->add_option("--out", outfile, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (compose->parsed()) return run_compose(g, ftext, gtext, optext);
    if (check->parsed()) return run_check(g, what, cftext, psitext, phitext, coptext, m, n, range);
    if (find->parsed()) return run_find(g, p, k, l, strategy);
    if (sweep->parsed()) return run_sweep(g, bound, outfile);
  } catch (const ffd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ffd::Errc::BudgetExceeded: return 4;
      case ffd::Errc::WeakCancellationFails:
      case ffd::Errc::EquivalenceViolation: return 3;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
