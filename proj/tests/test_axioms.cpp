#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tdtsw/axioms.hpp"

using namespace tdtsw;
using namespace tdtsw::logic;
using tdtsw::oracle::imp;

namespace {

Assignment all(const Formula& f, bool value) {
  Assignment a;
  for (Atom atom : atoms(f)) a[atom] = value;
  return a;
}

std::vector<Atom> all_atoms() {
  std::vector<Atom> out;
  for (const auto& [a, n] : kAtomNames) out.push_back(a);
  return out;
}

Assignment random_assignment(std::mt19937_64& rng) {
  Assignment a;
  for (Atom atom : all_atoms()) a[atom] = (rng() & 1U) != 0;
  return a;
}

// Hand transcription of the closing postulate formula, independent of Formula.
bool pdtsw_oracle(const Assignment& a) {
  auto v = [&](Atom x) { return a.at(x); };
  using enum Atom;
  return imp(v(D), v(T) && v(SW)) && imp(v(T), v(I)) && imp(v(I), v(A)) && imp(v(I) && v(A), v(E_engage)) &&
         imp(v(D) && v(A), v(RD)) && imp(v(D), v(SW_up) && v(C_content)) && imp(v(T), v(SW_up)) &&
         imp(v(R), v(D) && v(T)) && imp(v(D) && v(T), v(SW_upup)) && imp(v(T), v(Trust_up)) &&
         imp(v(T) && v(Trust), v(EG)) && imp(v(D) && v(T), v(P_SW_up)) && imp(v(T), v(P_Trust_up)) &&
         imp(v(T) && v(Trust), v(P_EG));
}

}  // namespace

TEST(Eval, Basics) {
  const Formula dt = implies(var(Atom::D), var(Atom::T));
  EXPECT_FALSE(eval(dt, {{Atom::D, true}, {Atom::T, false}}));
  EXPECT_TRUE(eval(dt, {{Atom::D, false}, {Atom::T, false}}));
  const Formula contradiction = var(Atom::D) && !var(Atom::D);
  EXPECT_FALSE(eval(contradiction, {{Atom::D, true}}));
  EXPECT_FALSE(eval(contradiction, {{Atom::D, false}}));
  EXPECT_THROW(eval(dt, {{Atom::D, true}}), LookupError);
}

// Exhaustive comparison with a direct truth-table oracle for every formula
// shape over up to four atoms built from a small grammar.
TEST(Eval, AgreesWithTruthTableOracle) {
  const std::vector<Atom> vocab{Atom::A, Atom::D, Atom::I, Atom::T};
  struct Case {
    Formula f;
    std::function<bool(const std::vector<bool>&)> oracle;
  };
  const Formula a = var(Atom::A), d = var(Atom::D), i = var(Atom::I), t = var(Atom::T);
  std::vector<Case> cases{
      {a, [](const auto& v) { return v[0]; }},
      {!a, [](const auto& v) { return !v[0]; }},
      {a && d, [](const auto& v) { return v[0] && v[1]; }},
      {a || d, [](const auto& v) { return v[0] || v[1]; }},
      {implies(a, d), [](const auto& v) { return !v[0] || v[1]; }},
      {implies(a && d, i || !t), [](const auto& v) { return !(v[0] && v[1]) || (v[2] || !v[3]); }},
      {!(implies(i, t) && (a || !d)), [](const auto& v) { return !((!v[2] || v[3]) && (v[0] || !v[1])); }},
      {implies(implies(a, d), implies(i, t)), [](const auto& v) { return !(!v[0] || v[1]) || (!v[2] || v[3]); }},
  };
  for (const auto& c : cases) {
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<bool> values(4);
      Assignment asg;
      for (int k = 0; k < 4; ++k) {
        values[k] = ((mask >> k) & 1) != 0;
        asg[vocab[k]] = values[k];
      }
      EXPECT_EQ(eval(c.f, asg), c.oracle(values)) << to_string(c.f);
    }
  }
}

TEST(Eval, DeMorganAndImplicationIdentities) {
  const Formula p = var(Atom::D) && var(Atom::T), q = var(Atom::I) || !var(Atom::A);
  for (int mask = 0; mask < 16; ++mask) {
    Assignment asg{{Atom::D, (mask & 1) != 0}, {Atom::T, (mask & 2) != 0}, {Atom::I, (mask & 4) != 0},
                   {Atom::A, (mask & 8) != 0}};
    EXPECT_EQ(eval(!(p && q), asg), eval(!p || !q, asg));
    EXPECT_EQ(eval(!(p || q), asg), eval(!p && !q, asg));
    EXPECT_EQ(eval(implies(p, q), asg), eval(!p || q, asg));
  }
}

TEST(BuildFormula, AdtswAtomsAndValues) {
  const Formula f = build_formula(System::adtsw);
  const AtomSet expected{Atom::D, Atom::T, Atom::I, Atom::A, Atom::C_part, Atom::SW, Atom::R};
  EXPECT_EQ(atoms(f), expected);
  EXPECT_TRUE(eval(f, all(f, true)));
  auto a = all(f, true);
  a[Atom::T] = false;
  EXPECT_FALSE(eval(f, a));
  EXPECT_EQ(conjuncts(f).size(), 8u);
}

TEST(BuildFormula, TdtswShape) {
  const Formula f = build_formula(System::tdtsw);
  EXPECT_EQ(atoms(f).size(), 14u);
  EXPECT_EQ(conjuncts(f).size(), 12u);
  EXPECT_EQ(conjuncts(f).front(), var(Atom::D));
  EXPECT_FALSE(atoms(f).contains(Atom::SW));
}

TEST(Models, Adtsw) {
  const ModelSet set = models(build_formula(System::adtsw), true);
  EXPECT_EQ(set.count, 8u);
  EXPECT_EQ(set.total, 128u);
  ASSERT_EQ(set.listing.size(), 8u);
  // Oracle over (A, C_part, D, I, R, SW, T).
  const auto oracle = oracle::count_models(7, [](const std::vector<bool>& v) {
    const bool A = v[0], C = v[1], D = v[2], I = v[3], R = v[4], SW = v[5], T = v[6];
    return imp(D, T) && imp(T, I) && imp(I, A) && imp(I, C) && imp(A && C, D) && imp(D, SW) && imp(T, SW) &&
           imp(R, D && T);
  });
  EXPECT_EQ(oracle, 8u);
  EXPECT_EQ(to_string(set.listing.front()), "A=0,C_part=0,D=0,I=0,R=0,SW=0,T=0");
  EXPECT_EQ(to_string(set.listing.back()), "A=1,C_part=1,D=1,I=1,R=1,SW=1,T=1");
  for (std::size_t i = 1; i < set.listing.size(); ++i) {
    EXPECT_LT(to_string(set.listing[i - 1]), to_string(set.listing[i]));
  }
}

TEST(Models, Tdtsw) {
  // Frozen from an independent brute-force enumeration over the 14 atoms.
  EXPECT_EQ(models(build_formula(System::tdtsw)).count, 230u);
}

TEST(Models, SmallCases) {
  EXPECT_EQ(models(var(Atom::D) && !var(Atom::D)).count, 0u);
  const ModelSet single = models(var(Atom::D));
  EXPECT_EQ(single.count, 1u);
  EXPECT_EQ(single.total, 2u);
}

TEST(Models, ComplementCountsSumToTotal) {
  for (System s : {System::adtsw, System::tdtsw}) {
    const Formula f = build_formula(s);
    const ModelSet pos = models(f), neg = models(!f);
    EXPECT_EQ(pos.count + neg.count, pos.total);
  }
}

TEST(Models, CapacityGuard) {
  const Formula pdtsw = build_formula(System::pdtsw);
  EXPECT_EQ(atoms(pdtsw).size(), 17u);
  EXPECT_THROW(models(pdtsw), CapacityError);
}

TEST(Postulates, Examples) {
  EXPECT_FALSE(check_postulate(2, {{Atom::T, true}, {Atom::I, false}}));
  EXPECT_TRUE(check_postulate(5, {{Atom::D, true}, {Atom::A, true}, {Atom::RD, true}}));
  EXPECT_THROW(check_postulate(15, {}), LookupError);
  EXPECT_THROW(check_postulate(0, {}), LookupError);
}

TEST(Postulates, ConjunctionEqualsPdtswRandomized) {
  std::mt19937_64 rng(1234);
  const Formula pdtsw = build_formula(System::pdtsw);
  for (int i = 0; i < 1000; ++i) {
    const Assignment a = random_assignment(rng);
    bool all_hold = true;
    for (int id = 1; id <= kPostulateCount; ++id) all_hold = all_hold && check_postulate(id, a);
    EXPECT_EQ(all_hold, eval(pdtsw, a));
    EXPECT_EQ(all_hold, pdtsw_oracle(a));
  }
}

TEST(Postulates, ConjunctionEqualsPdtswExhaustive) {
  const Formula pdtsw = build_formula(System::pdtsw);
  const AtomSet pdtsw_atoms = atoms(pdtsw);
  const std::vector<Atom> vars(pdtsw_atoms.begin(), pdtsw_atoms.end());
  std::vector<Formula> list;
  for (int id = 1; id <= kPostulateCount; ++id) list.push_back(postulate(id));
  const Formula joined = conjunction(list);
  std::uint64_t mismatches = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << vars.size()); ++i) {
    const Assignment a = assignment_at(vars, i);
    const bool value = eval(pdtsw, a);
    mismatches += value != eval(joined, a);
    mismatches += value != pdtsw_oracle(a);
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(Assignment, ParseAndPrint) {
  const Assignment a = parse_assignment("D=1,T=0, SW=1");
  EXPECT_EQ(to_string(a), "D=1,SW=1,T=0");
  EXPECT_THROW(parse_assignment("D=2"), ConfigError);
  EXPECT_THROW(parse_assignment("Q=1"), LookupError);
  EXPECT_THROW(parse_assignment("D"), ConfigError);
  EXPECT_THROW(parse_assignment("D=1,D=0"), ConfigError);
  EXPECT_TRUE(parse_assignment("").empty());
}
