#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffdiamond/composed.hpp"

namespace ffd {

/// One witness-search instance: a monic irreducible f of degree l over
/// GF(p^k) with all non-constant coefficients in GF(p) and constant term
/// whose negative generates GF(p^k) over GF(p).
struct SearchTask {
  std::uint64_t p = 2, k = 1, l = 1;
};

enum class Strategy { automatic, exhaustive, fast_only };

struct Witness {
  Poly f;          // over the GF(p^k) node
  FieldElem c0;    // -f(0); generates GF(p^k) over GF(p)
  std::string strategy;  // "artin_schreier" | "binomial" | "exhaustive"
  std::uint64_t seed = kDefaultSeed;
};

struct SearchResult {
  bool exhausted = false;  // full candidate space scanned with no witness
  std::optional<Witness> witness;
  std::uint64_t tested = 0;
};

/// Reasons the witness fails its defining invariants (empty == valid).
std::vector<std::string> witness_defects(const Witness& w, std::uint64_t p, std::uint64_t k,
                                         std::uint64_t l);

/// automatic: constructive fast paths first (x^p - x - a when l == p, then
/// x^l - a for primitive a when every prime factor of l divides p^k - 1 and
/// p^k == 1 mod 4 whenever 4 | l), falling back to the exhaustive scan.
/// exhaustive: lexicographic scan over the non-constant coefficient vectors
/// (ascending rank, constant-most coefficient fastest) and, inside, the
/// generators of GF(p^k) in rank order; returns the first witness, or
/// `exhausted` after a full scan — the loud counterexample outcome.
/// fast_only: throws NoFastPath when neither constructive path applies.
SearchResult find_witness(const SearchTask& t, Strategy strategy = Strategy::automatic,
                          std::uint64_t seed = kDefaultSeed, const Limits& lim = {});

/// Same search over a caller-supplied field: `field` must be a tower over
/// GF(p) of total degree k (any intermediate nodes are allowed, which lets
/// prime-power base fields reuse this search).
SearchResult find_witness_in_ctx(const CtxPtr& field, const SearchTask& t, Strategy strategy,
                                 std::uint64_t seed = kDefaultSeed, const Limits& lim = {});

/// x^p - x - a for the first generator a of GF(p^k) with absolute trace 1.
Witness artin_schreier_witness(std::uint64_t p, std::uint64_t k);

/// x^l - a for a primitive element a of GF(p^k); nullopt when the
/// divisibility or mod-4 side conditions fail. Primitive search scans
/// deterministically for fields up to 2^16 elements and uses seeded random
/// probing above that.
std::optional<Witness> binomial_witness(std::uint64_t p, std::uint64_t k, std::uint64_t l,
                                        std::uint64_t seed = kDefaultSeed);

struct SweepRow {
  std::uint64_t p, k, l, pkl;
  std::string strategy;  // "EXHAUSTED" when no witness exists
  std::string f_text, c0_text;
  bool exhausted = false;
  std::uint64_t elapsed_ms = 0;
};

struct SweepReport {
  std::uint64_t bound = 0;
  unsigned shards = 1;
  std::uint64_t seed = kDefaultSeed;
  std::vector<SweepRow> rows;
  std::uint64_t exhausted_count = 0;
  /// Line-oriented text: "p k l p^kl strategy witness_f witness_c0 elapsed_ms".
  std::string text() const;
  /// Deterministic machine form; wall-clock fields are omitted so identical
  /// seeds give byte-identical documents regardless of shard count.
  nlohmann::ordered_json to_json() const;
};

/// All tasks (p, k, l) with p prime, k, l >= 1, kl >= 2 and p^{kl} <= bound,
/// ordered by (p^{kl}, p, k, l).
std::vector<SearchTask> enumerate_tasks(std::uint64_t bound);

/// Runs find_witness(automatic) over enumerate_tasks(bound), optionally on
/// several worker threads; the merged report is shard-count invariant.
SweepReport verify_range(std::uint64_t bound, unsigned shards = 1,
                         std::uint64_t seed = kDefaultSeed, const Limits& lim = {});

/// Four independently computed formulations of the same obstruction, for
/// m, n > 1 coprime with m1 the smallest prime divisor of m:
///  (construction)        some phi with deg_x == m1, 0 < deg_y < n1 admits a
///                        Frobenius-shift collision on the generator sets;
///  (injectivity failure) some monic psi of degree m1 with psi(0) == 0 fails
///                        restricted injectivity on the degree-m generators;
///  (value set)           the psi-image of the degree-m generators meets the
///                        degree-(m/m1) generators;
///  (shifted irreducible) some monic irreducible f of degree m1 over
///                        GF(q^{m/m1}) has f - f(0) over GF(q) and f(0)
///                        generating GF(q^{m/m1}) over GF(q).
/// The four booleans must agree; disagreement throws EquivalenceViolation.
struct FourWay {
  bool via_construction = false;
  bool via_injectivity = false;
  bool via_value_set = false;
  bool via_shifted_irreducible = false;
  bool consistent = false;
  std::string psi_text;      // injectivity-failure witness
  std::string value_text;    // value-set witness "alpha=..;c=..;value=.."
  std::string f_text;        // shifted-irreducible witness (over the subfield node)
  std::string phi_text;      // construction witness
  std::string triple_text;   // verified collision "alpha=..;k=..;beta=.."
  nlohmann::ordered_json to_json() const;
};

FourWay four_way_equivalence(const CtxPtr& base, std::uint64_t m, std::uint64_t n,
                             const Limits& lim = {});

/// The explicit degree-bound tightness construction: from a shifted-
/// irreducible witness f, phi = (f(x) - f(0)) * y together with a verified
/// collision triple (alpha, k = m/m1, beta). nullopt when no witness exists.
struct Tightness {
  BivarPoly phi;
  FieldElem alpha;
  std::uint64_t k;
  FieldElem beta;
};

std::optional<Tightness> tightness_witness(const CtxPtr& base, std::uint64_t m, std::uint64_t n,
                                           const Limits& lim = {});

nlohmann::ordered_json to_json(const SearchResult& r);

}  // namespace ffd
