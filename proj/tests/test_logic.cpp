#include <doctest.h>

#include "oracles/lasso_oracle.hpp"
#include "support/random.hpp"
#include "ucl/ctl.hpp"
#include "ucl/error.hpp"
#include "ucl/ltl.hpp"
#include "ucl/spec.hpp"

using namespace ucl;

namespace {

Architecture arch_of(std::vector<std::string> env, std::vector<std::string> ctrl = {},
                     std::vector<std::string> plant = {}) {
  Architecture a;
  a.env = PropSet(std::move(env));
  a.ctrl = PropSet(std::move(ctrl));
  a.plant = PropSet(std::move(plant));
  return a;
}

const char* kLbSpec =
    "spec lb\nenv task\nctrl asgn1 asgn2\nplant busy1 busy2 overload\nmutex ctrl\n"
    "formula G(task -> X(asgn1 | asgn2)) & G(!overload)\n";

bool agree_on_lassos(const ltl::Formula& a, const ltl::Formula& b, const PropSet& props, std::size_t len) {
  bool same = true;
  oracle::for_each_lasso(props, len, [&](const std::vector<Valuation>& w, std::size_t loop) {
    same = same && oracle::lasso_holds(a, props, w, loop) == oracle::lasso_holds(b, props, w, loop);
  });
  return same;
}

}  // namespace

TEST_CASE("ltl parsing produces canonical safety NNF") {
  const Architecture arch = arch_of({"task"}, {"asgn1", "asgn2"}, {"overload"});
  const auto g = ltl::parse_ltl("G(!overload)", arch);
  CHECK(g->op == ltl::Op::Globally);
  CHECK(g->args[0]->op == ltl::Op::Not);
  CHECK(g->args[0]->args[0]->atom == "overload");
  CHECK(ltl::parse_ltl("true", arch)->op == ltl::Op::True);

  const auto neg_f = ltl::parse_ltl("!(F overload)", arch);
  CHECK(ltl::equal(neg_f, g));
  // Both readings agree on every lasso up to length 6 over one atom.
  const PropSet one({"overload"});
  CHECK(agree_on_lassos(ltl::parse_raw("!(F overload)"), ltl::parse_raw("G(!overload)"), one, 6));

  CHECK(ltl::equal(ltl::parse_ltl("task -> X asgn1", arch), ltl::parse_ltl("!task | X asgn1", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("asgn1 & task", arch), ltl::parse_ltl("task & asgn1 & task", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("asgn1 & true", arch), ltl::parse_ltl("asgn1", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("asgn1 | !true", arch), ltl::parse_ltl("asgn1", arch)));
}

TEST_CASE("ltl precedence: unary over and over or over implies; W and R right-associative") {
  const Architecture arch = arch_of({"a", "b", "c"});
  CHECK(ltl::equal(ltl::parse_ltl("a | b & c", arch), ltl::parse_ltl("a | (b & c)", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("a -> b | c", arch), ltl::parse_ltl("a -> (b | c)", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("!a & b", arch), ltl::parse_ltl("(!a) & b", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("X a & b", arch), ltl::parse_ltl("(X a) & b", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("a W b W c", arch), ltl::parse_ltl("a W (b W c)", arch)));
  CHECK(ltl::equal(ltl::parse_ltl("a R b R c", arch), ltl::parse_ltl("a R (b R c)", arch)));
}

TEST_CASE("ltl parse errors") {
  const Architecture arch = arch_of({"p", "q"});
  CHECK_THROWS_AS(ltl::parse_ltl("G(p", arch), SyntaxError);
  CHECK_THROWS_AS(ltl::parse_ltl("p &", arch), SyntaxError);
  CHECK_THROWS_AS(ltl::parse_ltl("G zz", arch), UnknownAtom);
  CHECK_THROWS_AS(ltl::parse_ltl("F p", arch), NotSafety);
  CHECK_THROWS_AS(ltl::parse_ltl("p U q", arch), NotSafety);
  CHECK_THROWS_AS(ltl::parse_ltl("!G p", arch), NotSafety);
  CHECK_THROWS_AS(ltl::parse_ltl("!(p W q)", arch), NotSafety);
  try {
    ltl::parse_ltl("p & F q", arch);
    FAIL("expected NotSafety");
  } catch (const NotSafety& e) {
    CHECK(e.op() == "F");
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 5);
  }
  try {
    ltl::parse_ltl("p & ) q", arch);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.pos().column == 5);
  }
}

TEST_CASE("ltl NNF agrees with the surface formula on random lassos") {
  testgen::Rng rng(5);
  const Architecture arch = arch_of({"p", "q"});
  std::size_t checked = 0;
  for (int i = 0; i < 100; ++i) {
    const std::string text = testgen::ltl_text(rng, {"p", "q"}, 1 + static_cast<int>(testgen::pick(rng, 8)));
    INFO(text);
    CHECK(agree_on_lassos(ltl::parse_raw(text), ltl::parse_ltl(text, arch), arch.env, 5));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("ltl canonical forms round-trip and canonicalization is idempotent") {
  testgen::Rng rng(6);
  const Architecture arch = arch_of({"p", "q", "r"});
  for (int i = 0; i < 300; ++i) {
    const std::string text = testgen::ltl_text(rng, {"p", "q", "r"}, 1 + static_cast<int>(testgen::pick(rng, 10)));
    INFO(text);
    const auto f = ltl::parse_ltl(text, arch);
    const std::string s = ltl::to_string(f);
    const auto g = ltl::parse_ltl(s, arch);
    CHECK(ltl::equal(f, g));
    CHECK(ltl::to_string(g) == s);
    CHECK(ltl::equal(ltl::canonicalize(f), f));
  }
}

TEST_CASE("ltl size, next depth and atoms") {
  const Architecture arch = arch_of({"task"}, {"asgn1", "asgn2"}, {"overload"});
  const auto f = ltl::parse_ltl("G(task -> X(asgn1 | asgn2))", arch);
  CHECK(ltl::next_depth(f) == 1);
  CHECK(ltl::atoms(f) == std::vector<std::string>{"asgn1", "asgn2", "task"});
  CHECK(ltl::size(ltl::parse_ltl("G !overload", arch)) == 3);
  CHECK(ltl::next_depth(ltl::parse_ltl("X X task | X task", arch)) == 2);
}

TEST_CASE("ctl parsing, canonical forms and size") {
  const Architecture arch = arch_of({"task"}, {"asgn1", "asgn2"}, {"busy1", "busy2", "overload"});
  const auto phi = ctl::parse_ctl("AX(overload -> asgn1)", arch);
  CHECK(phi->op == ctl::Op::AX);
  CHECK(phi->lhs->op == ctl::Op::Implies);
  CHECK(phi->lhs->lhs->atom == "overload");
  CHECK(phi->lhs->rhs->atom == "asgn1");
  CHECK(ctl::size(phi) == 4);

  const auto nb = ctl::parse_ctl("!busy1", arch);
  CHECK(nb->op == ctl::Op::Not);
  CHECK(ctl::size(nb) == 2);

  CHECK(ctl::equal(ctl::parse_ctl("A[true U false]", arch), ctl::parse_ctl("AF false", arch)));
  CHECK(ctl::equal(ctl::parse_ctl("E[true U busy1]", arch), ctl::parse_ctl("EF busy1", arch)));
  CHECK(ctl::equal(ctl::parse_ctl("busy2 & busy1", arch), ctl::parse_ctl("busy1 & busy2", arch)));
  CHECK(ctl::is_propositional(nb));
  CHECK_FALSE(ctl::is_propositional(phi));

  CHECK_THROWS_AS(ctl::parse_ctl("X busy1", arch), UnquantifiedTemporal);
  CHECK_THROWS_AS(ctl::parse_ctl("AG G busy1", arch), UnquantifiedTemporal);
  CHECK_THROWS_AS(ctl::parse_ctl("AX nope", arch), UnknownAtom);
  CHECK_THROWS_AS(ctl::parse_ctl("A[busy1 U", arch), SyntaxError);
}

TEST_CASE("ctl canonical forms round-trip on random formulas") {
  testgen::Rng rng(7);
  const PropSet props({"p", "q", "r"});
  for (int i = 0; i < 300; ++i) {
    const auto f = ctl::canonicalize(testgen::ctl_formula(rng, props.names(), 1 + static_cast<int>(testgen::pick(rng, 9))));
    const std::string s = ctl::to_string(f);
    INFO(s);
    const auto g = ctl::parse_ctl(s, props);
    CHECK(ctl::equal(f, g));
    CHECK(ctl::to_string(g) == s);
    CHECK(ctl::equal(ctl::canonicalize(g), g));
    CHECK(ctl::size(g) == ctl::size(f));
  }
}

TEST_CASE("spec files parse, validate and round-trip") {
  const SpecDecl s = parse_spec(kLbSpec);
  CHECK(s.name == "lb");
  CHECK(s.arch.env == PropSet({"task"}));
  CHECK(s.arch.ctrl == PropSet({"asgn1", "asgn2"}));
  CHECK(s.arch.plant == PropSet({"busy1", "busy2", "overload"}));
  CHECK(s.arch.ctrl_mutex);
  CHECK(s.arch.ctrl_valuations() == std::vector<Valuation>{0, 1, 2});
  CHECK(ltl::equal(s.formula, ltl::parse_ltl("G(task -> X(asgn1 | asgn2)) & G(!overload)", s.arch)));

  const std::string text = serialize_spec(s);
  CHECK(serialize_spec(parse_spec(text)) == text);

  CHECK_THROWS_AS(parse_spec("spec bad\nenv\nctrl a\nplant a\nformula G a\n"), OverlappingPartition);
  const SpecDecl grid = parse_spec("spec g\nenv\nctrl up\nplant collision\nformula G !collision\n");
  CHECK(grid.arch.env.empty());
  CHECK_FALSE(grid.arch.ctrl_mutex);
  CHECK(grid.arch.ctrl_valuations() == std::vector<Valuation>{0, 1});
  CHECK_THROWS_AS(parse_spec("spec g\nenv\nctrl up\nplant collision\nformula G !other\n"), UnknownAtom);
  CHECK_THROWS_AS(parse_spec("spec g\nctrl up\n"), SyntaxError);
}

TEST_CASE("arch lines round-trip") {
  const SpecDecl s = parse_spec(kLbSpec);
  const std::string line = format_arch_line(s.arch);
  CHECK(line == "arch env {task} ctrl {asgn1 asgn2} plant {busy1 busy2 overload} mutex");
  CHECK(parse_arch_line(line, 1) == s.arch);
}

TEST_CASE("proposition sets and remaps") {
  const PropSet a({"c", "a", "b", "a"});
  CHECK(a.names() == std::vector<std::string>{"a", "b", "c"});
  CHECK(a.format(5) == "{a c}");
  CHECK(a.valuation_of({"c", "b"}) == 6);
  CHECK_THROWS_AS(a.valuation_of({"d"}), UnknownAtom);
  CHECK_THROWS_AS(PropSet({"1x"}), SyntaxError);
  const PropSet b({"b", "d"});
  const Remap r(a, b);
  CHECK(r(7) == 1);
  CHECK(Remap(b, a)(3) == 2);
  CHECK(a.unite(b).size() == 4);
  CHECK(a.intersect(b) == PropSet({"b"}));
  CHECK(a.minus(b) == PropSet({"a", "c"}));
}
