#include "doctest.h"

#include "npi/callstack.hpp"
#include "npi/knapsack_env.hpp"
#include "npi/rng.hpp"
#include "npi/sort_env.hpp"

using namespace npi;

TEST_SUITE("callstack") {

// Variable ids a,b,c,d = 0..3; function ids: 1 and 2, 0 = outermost.
TEST_CASE("call saves caller context and binds passed locals") {
  const auto& s = quicksort_schema();
  ControlState ctl;
  ctl.function_id = 2;
  std::vector<int> vars = {2, 3, 1, 2};
  // call function 1, locals (c,d) <- caller (c,d), result -> a
  Instruction call = make_ins(s.type_id("FunctionCall"), {0, 2, 3, 2, 3, 0});
  REQUIRE(push_call(ctl, vars, call, s, true, 64));

  REQUIRE(ctl.stack.size() == 1);
  const CallFrame& top = ctl.stack.back();
  CHECK(top.caller_function_id == 2);
  CHECK(top.caller_prev_action == call);
  CHECK(top.saved_variables == std::vector<int>{2, 3, 1, 2});
  CHECK(top.return_targets == std::vector<int>{0});

  CHECK(ctl.function_id == 1);
  CHECK_FALSE(ctl.prev_action.has_value());
  // passed variables keep their caller values, unpassed ones are retained
  CHECK(vars == std::vector<int>{2, 3, 1, 2});

  SUBCASE("return restores and then assigns the returned value") {
    vars[0] = 5;  // callee scribbles over local a
    vars[2] = 0;
    Instruction ret = make_ins(s.type_id("Return"), {0});  // return local a (= 5)
    REQUIRE(pop_return(ctl, vars, ret, s));
    CHECK(ctl.function_id == 2);
    CHECK(ctl.prev_action == call);  // always the function call itself
    CHECK(vars == std::vector<int>{5, 3, 1, 2});
    CHECK(ctl.stack.empty());
  }
}

TEST_CASE("zero-argument call leaves variables untouched") {
  const auto& s = knapsack_schema();
  ControlState ctl;
  std::vector<int> vars = {7};
  Instruction call = make_ins(s.type_id("Knapsack"));
  REQUIRE(push_call(ctl, vars, call, s, false, 8));
  CHECK(vars == std::vector<int>{7});
  CHECK(ctl.function_id == 1);
  CHECK(ctl.stack.back().saved_variables.empty());
  vars[0] = 9;
  REQUIRE(pop_return(ctl, vars, make_ins(s.type_id("Return")), s));
  CHECK(vars == std::vector<int>{9});  // nothing saved, nothing restored
  CHECK(ctl.prev_action == call);
}

TEST_CASE("balanced nested calls restore all variables") {
  const auto& s = quicksort_schema();
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    ControlState ctl;
    std::vector<int> vars(4);
    for (auto& v : vars) v = rng.uniform_int(10);
    std::vector<int> before = vars;

    Instruction outer = make_ins(s.type_id("FunctionCall"),
                                 {rng.uniform_int(2), rng.uniform_int(4), rng.uniform_int(4),
                                  rng.uniform_int(4), rng.uniform_int(4), rng.uniform_int(4)});
    Instruction inner = make_ins(s.type_id("FunctionCall"),
                                 {rng.uniform_int(2), rng.uniform_int(4), rng.uniform_int(4),
                                  rng.uniform_int(4), rng.uniform_int(4), rng.uniform_int(4)});
    REQUIRE(push_call(ctl, vars, outer, s, true, 64));
    for (auto& v : vars) v = rng.uniform_int(10);
    REQUIRE(push_call(ctl, vars, inner, s, true, 64));
    for (auto& v : vars) v = rng.uniform_int(10);

    int inner_ret = rng.uniform_int(4);
    int inner_val = vars[static_cast<std::size_t>(inner_ret)];
    REQUIRE(pop_return(ctl, vars, make_ins(s.type_id("Return"), {inner_ret}), s));
    CHECK(vars[static_cast<std::size_t>(inner.args[5])] == inner_val);

    int outer_ret = rng.uniform_int(4);
    int outer_val = vars[static_cast<std::size_t>(outer_ret)];
    REQUIRE(pop_return(ctl, vars, make_ins(s.type_id("Return"), {outer_ret}), s));
    CHECK(ctl.depth() == 0);
    CHECK(ctl.prev_action == outer);  // restored to the call itself
    // all variables equal their pre-call values except the return target
    for (int k = 0; k < 4; ++k) {
      if (k == outer.args[5])
        CHECK(vars[static_cast<std::size_t>(k)] == outer_val);
      else
        CHECK(vars[static_cast<std::size_t>(k)] == before[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("depth limit refuses the push") {
  const auto& s = quicksort_schema();
  ControlState ctl;
  std::vector<int> vars = {0, 0, 0, 0};
  Instruction call = make_ins(s.type_id("FunctionCall"), {0, 0, 1, 0, 1, 2});
  for (int d = 0; d < 5; ++d) REQUIRE(push_call(ctl, vars, call, s, true, 5));
  CHECK_FALSE(push_call(ctl, vars, call, s, true, 5));
  CHECK(ctl.depth() == 5);
}

TEST_CASE("return on an empty stack reports failure and changes nothing") {
  const auto& s = quicksort_schema();
  ControlState ctl;
  std::vector<int> vars = {1, 2, 3, 4};
  CHECK_FALSE(pop_return(ctl, vars, make_ins(s.type_id("Return"), {2}), s));
  CHECK(vars == std::vector<int>{1, 2, 3, 4});
  CHECK(ctl.function_id == 0);
}

}  // TEST_SUITE
