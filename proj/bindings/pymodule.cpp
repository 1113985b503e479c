#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffdiamond/composed.hpp"
#include "ffdiamond/numtheory.hpp"
#include "ffdiamond/conjecture.hpp"
#include "ffdiamond/textio.hpp"

namespace py = pybind11;
using namespace ffd;

namespace {

Limits make_limits(std::uint64_t budget, std::uint64_t cap) { return Limits{budget, cap}; }

Strategy parse_strategy(const std::string& s) {
  if (s == "auto" || s == "automatic") return Strategy::automatic;
  if (s == "exhaustive") return Strategy::exhaustive;
  if (s == "fast-only" || s == "fast_only") return Strategy::fast_only;
  fail(Errc::SyntaxError, "strategy must be auto, exhaustive or fast-only");
}

CancellationRange parse_range(const std::string& s) {
  if (s == "orbit" || s == "frobenius-orbit") return CancellationRange::frobenius_orbit;
  if (s == "full") return CancellationRange::full;
  fail(Errc::SyntaxError, "range must be orbit or full");
}

}  // namespace

PYBIND11_MODULE(_ffdiamond, m) {
  m.doc() =
      "Exact arithmetic in finite field towers, composed products under "
      "diamond ops, cancellation checkers, and irreducible-witness sweeps";

  py::register_exception<Error>(m, "Error");
  m.attr("DEFAULT_SEED") = py::int_(kDefaultSeed);
  m.attr("DEFAULT_BUDGET") = py::int_(Limits{}.budget);

  py::class_<FieldCtx, std::shared_ptr<FieldCtx>>(m, "FieldCtx")
      .def_static("prime", &FieldCtx::make_prime, py::arg("p"))
      .def("extend", [](const CtxPtr& c, const Poly& mod) { return FieldCtx::extend(c, mod); },
           py::arg("modulus"))
      .def("canonical_extension",
           [](const CtxPtr& c, std::uint64_t d) { return FieldCtx::canonical_extension(c, d); },
           py::arg("degree"))
      .def_property_readonly("cardinality", &FieldCtx::cardinality)
      .def_property_readonly("characteristic", &FieldCtx::characteristic)
      .def_property_readonly("degree", &FieldCtx::degree)
      .def_property_readonly("total_degree", &FieldCtx::total_degree)
      .def_property_readonly("base", [](const FieldCtx& c) { return c.base(); })
      .def_property_readonly("is_prime_field", &FieldCtx::is_prime_field)
      .def("zero", &FieldCtx::zero)
      .def("one", &FieldCtx::one)
      .def("generator", &FieldCtx::generator)
      .def("from_rank", &FieldCtx::from_rank, py::arg("rank"))
      .def("element", [](const CtxPtr& c, const std::string& t) { return parse_elem(t, c); },
           py::arg("text"))
      .def("poly", [](const CtxPtr& c, const std::string& t) { return parse_poly(t, c); },
           py::arg("text"))
      .def("bivar", [](const CtxPtr& c, const std::string& t) { return parse_bivar(t, c); },
           py::arg("text"))
      .def("elements",
           [](const CtxPtr& c) {
             std::vector<FieldElem> out;
             out.reserve(c->cardinality());
             for (std::uint64_t r = 0; r < c->cardinality(); ++r) out.push_back(c->from_rank(r));
             return out;
           })
      .def("spec", [](const CtxPtr& c) { return format_field_spec(c); })
      .def("__eq__",
           [](const FieldCtx& a, const FieldCtx& b) { return a.same_tower(b); },
           py::is_operator())
      .def("__repr__", &FieldCtx::describe);

  m.def("field", [](const std::string& spec) { return parse_field_spec(spec); }, py::arg("spec"),
        "Field from a tower spec such as 'p=2' or 'p=2,mod=x^2+x+1'");

  py::class_<FieldElem>(m, "FieldElem")
      .def_property_readonly("ctx", [](const FieldElem& a) { return a.ctx(); })
      .def_property_readonly("rank", &FieldElem::rank)
      .def_property_readonly("is_zero", &FieldElem::is_zero)
      .def_property_readonly("is_one", &FieldElem::is_one)
      .def("coeffs", &FieldElem::coeffs)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("inv", &FieldElem::inv)
      .def("__pow__", &FieldElem::pow, py::arg("e"))
      .def("frobenius", &frobenius, py::arg("q"))
      .def("orbit", &frobenius_orbit, py::arg("q"))
      .def("mult_order", &mult_order)
      .def("trace_to", &trace_to, py::arg("q"))
      .def("generates", &generates, py::arg("q"), py::arg("m"))
      .def("degree_over", &subfield_degree, py::arg("q"))
      .def("lift_to", &lift_to, py::arg("ctx"))
      .def("descend_to", &descend_to, py::arg("ctx"))
      .def("minimal_polynomial", &minimal_polynomial, py::arg("q"))
      .def("__str__", &format_elem)
      .def("__repr__", [](const FieldElem& a) { return format_elem(a); });

  py::class_<Poly>(m, "Poly")
      .def_property_readonly("ctx", [](const Poly& f) { return f.ctx(); })
      .def_property_readonly("degree", &Poly::degree)
      .def_property_readonly("is_monic", &Poly::is_monic)
      .def_property_readonly("is_zero", &Poly::is_zero)
      .def("coeff", &Poly::coeff, py::arg("i"))
      .def("coeffs", [](const Poly& f) { return f.coeffs(); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("monic", &Poly::monic)
      .def("derivative", &Poly::derivative)
      .def("eval", &Poly::eval, py::arg("a"))
      .def("lift_to", &Poly::lift_to, py::arg("ctx"))
      .def("__str__", &format_poly)
      .def("__repr__", [](const Poly& f) { return format_poly(f); });

  m.def("poly_gcd", &poly_gcd);
  m.def("poly_quot", &poly_quot);
  m.def("poly_rem", &poly_rem);
  m.def("powmod", &powmod, py::arg("base"), py::arg("e"), py::arg("modulus"));
  m.def("is_irreducible", &is_irreducible, py::arg("f"));
  m.def("squarefree_radical", &squarefree_radical);
  m.def("factor_degree_profile", &factor_degree_profile);
  m.def("roots_in", &roots_in, py::arg("f"), py::arg("ext"), py::arg("seed") = kDefaultSeed);
  m.def("root_multiplicity", &root_multiplicity, py::arg("f"), py::arg("root"));
  m.def(
      "all_monic_irreducibles",
      [](const CtxPtr& ctx, std::uint64_t degree, std::uint64_t budget) {
        MonicIrreducibles range(ctx, degree, budget);
        std::vector<Poly> out;
        while (auto f = range.next()) out.push_back(std::move(*f));
        return out;
      },
      py::arg("ctx"), py::arg("degree"), py::arg("budget") = Limits{}.budget);
  m.def("irreducible_count", &irreducible_count, py::arg("q"), py::arg("n"));
  m.def("random_irreducible", &random_irreducible, py::arg("ctx"), py::arg("degree"),
        py::arg("seed") = kDefaultSeed);
  m.def("ord_mod", &ord_mod, py::arg("k"), py::arg("r"));

  py::class_<BivarPoly>(m, "BivarPoly")
      .def_property_readonly("ctx", [](const BivarPoly& p) { return p.ctx(); })
      .def_property_readonly("deg_x", &BivarPoly::deg_x)
      .def_property_readonly("deg_y", &BivarPoly::deg_y)
      .def("eval", &BivarPoly::eval, py::arg("x"), py::arg("y"))
      .def(py::self == py::self)
      .def("__str__", &format_bivar)
      .def("__repr__", [](const BivarPoly& p) { return format_bivar(p); });

  py::class_<DiamondOp>(m, "DiamondOp")
      .def_static("add", &DiamondOp::add)
      .def_static("mul", &DiamondOp::mul)
      .def_static("bivar", &DiamondOp::bivar, py::arg("phi"))
      .def("__repr__", [](const DiamondOp& d) { return "DiamondOp(" + d.describe() + ")"; });

  m.def("eval_diamond", &eval_diamond, py::arg("op"), py::arg("a"), py::arg("b"));
  m.def(
      "composed_product",
      [](const Poly& f, const Poly& g, const DiamondOp& d, std::uint64_t seed,
         std::uint64_t budget, std::uint64_t cap) {
        return composed_product(f, g, d, seed, make_limits(budget, cap));
      },
      py::arg("f"), py::arg("g"), py::arg("op"), py::arg("seed") = kDefaultSeed,
      py::arg("budget") = Limits{}.budget, py::arg("cap") = UINT64_MAX);

  py::class_<WeakCancellation::Counterexample>(m, "CancellationCounterexample")
      .def_readonly("right_operand", &WeakCancellation::Counterexample::right_operand)
      .def_readonly("a", &WeakCancellation::Counterexample::a)
      .def_readonly("other", &WeakCancellation::Counterexample::other)
      .def_readonly("b", &WeakCancellation::Counterexample::b)
      .def_readonly("frobenius_shift", &WeakCancellation::Counterexample::frobenius_shift)
      .def("__repr__", &WeakCancellation::Counterexample::describe);
  py::class_<WeakCancellation>(m, "WeakCancellation")
      .def_readonly("holds", &WeakCancellation::holds)
      .def_readonly("cex", &WeakCancellation::cex)
      .def_readonly("pairs", &WeakCancellation::pairs)
      .def("to_json", [](const WeakCancellation& w) { return to_json(w).dump(); });
  m.def(
      "weak_cancellation",
      [](const DiamondOp& d, const CtxPtr& base, std::uint64_t mm, std::uint64_t nn,
         const std::string& range, std::uint64_t budget, std::uint64_t cap) {
        return weak_cancellation(d, base, mm, nn, make_limits(budget, cap), parse_range(range));
      },
      py::arg("op"), py::arg("base"), py::arg("m"), py::arg("n"), py::arg("range") = "orbit",
      py::arg("budget") = Limits{}.budget, py::arg("cap") = UINT64_MAX);

  py::class_<RestrictedInjectivity>(m, "RestrictedInjectivity")
      .def_readonly("holds", &RestrictedInjectivity::holds)
      .def_readonly("cex", &RestrictedInjectivity::cex)
      .def("to_json", [](const RestrictedInjectivity& r) { return to_json(r).dump(); });
  m.def(
      "restricted_injectivity",
      [](const Poly& psi, std::uint64_t mm, std::uint64_t budget) {
        return restricted_injectivity(psi, mm, Limits{budget, UINT64_MAX});
      },
      py::arg("psi"), py::arg("m"), py::arg("budget") = Limits{}.budget);

  m.def("linear_independence_check", &linear_independence_check, py::arg("alpha"), py::arg("q"),
        py::arg("k"));

  py::class_<BrawleyCarlitz>(m, "BrawleyCarlitz")
      .def_readonly("m", &BrawleyCarlitz::m)
      .def_readonly("n", &BrawleyCarlitz::n)
      .def_readonly("coprime", &BrawleyCarlitz::coprime)
      .def_readonly("irreducible_pairs", &BrawleyCarlitz::irreducible_pairs)
      .def_readonly("products_irreducible", &BrawleyCarlitz::products_irreducible)
      .def_readonly("reducible_samples", &BrawleyCarlitz::reducible_samples)
      .def_readonly("equivalence_holds", &BrawleyCarlitz::equivalence_holds)
      .def_readonly("violation", &BrawleyCarlitz::violation)
      .def("to_json", [](const BrawleyCarlitz& r) { return r.to_json().dump(); });
  m.def(
      "brawley_carlitz_verify",
      [](const CtxPtr& base, std::uint64_t mm, std::uint64_t nn, const DiamondOp& d,
         std::uint64_t seed, std::uint64_t budget, std::uint64_t cap) {
        return brawley_carlitz_verify(base, mm, nn, d, seed, make_limits(budget, cap));
      },
      py::arg("base"), py::arg("m"), py::arg("n"), py::arg("op"), py::arg("seed") = kDefaultSeed,
      py::arg("budget") = Limits{}.budget, py::arg("cap") = UINT64_MAX);

  py::class_<DegreeBoundSweep>(m, "DegreeBoundSweep")
      .def_readonly("phis", &DegreeBoundSweep::phis)
      .def_readonly("all_hold", &DegreeBoundSweep::all_hold)
      .def_readonly("violating_phi", &DegreeBoundSweep::violating_phi)
      .def("to_json", [](const DegreeBoundSweep& r) { return r.to_json().dump(); });
  m.def(
      "weak_cancellation_degree_sweep",
      [](const CtxPtr& base, std::uint64_t mm, std::uint64_t nn, std::uint64_t budget) {
        return weak_cancellation_degree_sweep(base, mm, nn, Limits{budget, UINT64_MAX});
      },
      py::arg("base"), py::arg("m"), py::arg("n"), py::arg("budget") = Limits{}.budget);

  py::class_<Witness>(m, "Witness")
      .def_readonly("f", &Witness::f)
      .def_readonly("c0", &Witness::c0)
      .def_readonly("strategy", &Witness::strategy)
      .def_readonly("seed", &Witness::seed);
  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("exhausted", &SearchResult::exhausted)
      .def_readonly("witness", &SearchResult::witness)
      .def_readonly("tested", &SearchResult::tested)
      .def("to_json", [](const SearchResult& r) { return to_json(r).dump(); });
  m.def(
      "find_witness",
      [](std::uint64_t p, std::uint64_t k, std::uint64_t l, const std::string& strategy,
         std::uint64_t seed, std::uint64_t budget, std::uint64_t cap) {
        return find_witness({p, k, l}, parse_strategy(strategy), seed, make_limits(budget, cap));
      },
      py::arg("p"), py::arg("k"), py::arg("l"), py::arg("strategy") = "auto",
      py::arg("seed") = kDefaultSeed, py::arg("budget") = Limits{}.budget,
      py::arg("cap") = UINT64_MAX);
  m.def("witness_defects",
        [](const Witness& w, std::uint64_t p, std::uint64_t k, std::uint64_t l) {
          return witness_defects(w, p, k, l);
        },
        py::arg("witness"), py::arg("p"), py::arg("k"), py::arg("l"));
  m.def("artin_schreier_witness", &artin_schreier_witness, py::arg("p"), py::arg("k"));
  m.def("binomial_witness", &binomial_witness, py::arg("p"), py::arg("k"), py::arg("l"),
        py::arg("seed") = kDefaultSeed);

  m.def("enumerate_tasks", [](std::uint64_t bound) {
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> out;
    for (const auto& t : enumerate_tasks(bound)) out.emplace_back(t.p, t.k, t.l);
    return out;
  });
  py::class_<SweepReport>(m, "SweepReport")
      .def_readonly("bound", &SweepReport::bound)
      .def_readonly("exhausted_count", &SweepReport::exhausted_count)
      .def_property_readonly("tasks", [](const SweepReport& r) { return r.rows.size(); })
      .def("text", &SweepReport::text)
      .def("to_json", [](const SweepReport& r) { return r.to_json().dump(); });
  m.def(
      "verify_range",
      [](std::uint64_t bound, unsigned shards, std::uint64_t seed, std::uint64_t budget) {
        return verify_range(bound, shards, seed, Limits{budget, UINT64_MAX});
      },
      py::arg("bound"), py::arg("shards") = 1, py::arg("seed") = kDefaultSeed,
      py::arg("budget") = Limits{}.budget);

  py::class_<FourWay>(m, "FourWay")
      .def_readonly("via_construction", &FourWay::via_construction)
      .def_readonly("via_injectivity", &FourWay::via_injectivity)
      .def_readonly("via_value_set", &FourWay::via_value_set)
      .def_readonly("via_shifted_irreducible", &FourWay::via_shifted_irreducible)
      .def_readonly("consistent", &FourWay::consistent)
      .def("to_json", [](const FourWay& r) { return r.to_json().dump(); });
  m.def(
      "four_way_equivalence",
      [](const CtxPtr& base, std::uint64_t mm, std::uint64_t nn, std::uint64_t budget) {
        return four_way_equivalence(base, mm, nn, Limits{budget, UINT64_MAX});
      },
      py::arg("base"), py::arg("m"), py::arg("n"), py::arg("budget") = Limits{}.budget);

  py::class_<Tightness>(m, "Tightness")
      .def_readonly("phi", &Tightness::phi)
      .def_readonly("alpha", &Tightness::alpha)
      .def_readonly("k", &Tightness::k)
      .def_readonly("beta", &Tightness::beta);
  m.def(
      "tightness_witness",
      [](const CtxPtr& base, std::uint64_t mm, std::uint64_t nn, std::uint64_t budget) {
        return tightness_witness(base, mm, nn, Limits{budget, UINT64_MAX});
      },
      py::arg("base"), py::arg("m"), py::arg("n"), py::arg("budget") = Limits{}.budget);
}
