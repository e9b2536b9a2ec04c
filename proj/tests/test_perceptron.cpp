#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qpt/perceptron.hpp"

using namespace qpt;

namespace {

std::vector<std::vector<int>> weight_lists(const SolutionSet& set) {
  std::vector<std::vector<int>> out;
  for (const auto& a : set.assignments) out.push_back(a.weights);
  return out;
}

}  // namespace

TEST_CASE("weighted sum of inputs") {
  const std::vector<int> on{1, 1};
  const std::vector<int> w21{2, 1};
  CHECK(neuron_input(on, w21) == 3);

  const std::vector<int> mask{0, 1};
  const std::vector<int> w33{3, 3};
  CHECK(neuron_input(mask, w33) == 3);

  const std::vector<int> off{0, 0};
  CHECK(neuron_input(off, w33) == 0);

  const std::vector<int> three{1, 1, 1};
  CHECK_THROWS_AS(neuron_input(three, w33), std::invalid_argument);
}

TEST_CASE("threshold activation") {
  CHECK(activate(3, 3, Predicate::Geq) == 1);
  CHECK(activate(5, 3, Predicate::Equal) == 0);
  CHECK(activate(2, 3, Predicate::Geq) == 0);
  CHECK(activate(3, 3, Predicate::Equal) == 1);
  CHECK(activate(5, 3, Predicate::Geq) == 1);
}

TEST_CASE("solution sets for threshold 3 match the training tables") {
  const ProblemSpec spec{2, 2, 3, Predicate::Equal};

  const SolutionSet one_zero = enumerate_solutions(spec, std::vector<int>{1, 0});
  CHECK(weight_lists(one_zero) ==
        std::vector<std::vector<int>>{{3, 0}, {3, 1}, {3, 2}, {3, 3}});

  const SolutionSet zero_one = enumerate_solutions(spec, std::vector<int>{0, 1});
  CHECK(weight_lists(zero_one) ==
        std::vector<std::vector<int>>{{0, 3}, {1, 3}, {2, 3}, {3, 3}});

  const SolutionSet both = enumerate_solutions(spec, std::vector<int>{1, 1});
  CHECK(weight_lists(both) ==
        std::vector<std::vector<int>>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});

  const SolutionSet none = enumerate_solutions(spec, std::vector<int>{0, 0});
  CHECK(none.empty());
}

TEST_CASE("solution sets for threshold 5 match the training tables") {
  const ProblemSpec spec{2, 2, 5, Predicate::Equal};
  const SolutionSet both = enumerate_solutions(spec, std::vector<int>{1, 1});
  CHECK(weight_lists(both) == std::vector<std::vector<int>>{{2, 3}, {3, 2}});

  for (const std::vector<int>& inputs :
       {std::vector<int>{0, 0}, std::vector<int>{1, 0}, std::vector<int>{0, 1}}) {
    CHECK(enumerate_solutions(spec, inputs).empty());
  }
}

TEST_CASE("joint enumeration counts solutions across input patterns") {
  const SolutionSet joint3 =
      enumerate_solutions(ProblemSpec{2, 2, 3, Predicate::Equal}, kJointInputs);
  CHECK(joint3.size() == 12);  // 0 + 4 + 4 + 4 across the four input patterns

  const SolutionSet joint5 =
      enumerate_solutions(ProblemSpec{2, 2, 5, Predicate::Equal}, kJointInputs);
  CHECK(joint5.size() == 2);
  CHECK(joint5.contains(Assignment{{1, 1}, {2, 3}}));
  CHECK(joint5.contains(Assignment{{1, 1}, {3, 2}}));
}

TEST_CASE("geq solution sets contain the equal ones") {
  for (int ac = 0; ac < 8; ++ac) {
    const ProblemSpec eq{2, 2, ac, Predicate::Equal};
    const ProblemSpec geq{2, 2, ac, Predicate::Geq};
    const SolutionSet eq_set = enumerate_solutions(eq, kJointInputs);
    const SolutionSet geq_set = enumerate_solutions(geq, kJointInputs);
    for (const auto& a : eq_set.assignments) CHECK(geq_set.contains(a));
    CHECK(geq_set.size() >= eq_set.size());
  }
}

TEST_CASE("enumeration agrees with an independent brute force") {
  for (const Predicate predicate : {Predicate::Equal, Predicate::Geq}) {
    for (int ac = 0; ac < 8; ++ac) {
      const ProblemSpec spec{2, 2, ac, predicate};
      const SolutionSet set = enumerate_solutions(spec, kJointInputs);
      std::size_t count = 0;
      for (int i1 = 0; i1 <= 1; ++i1) {
        for (int i2 = 0; i2 <= 1; ++i2) {
          for (int w1 = 0; w1 < 4; ++w1) {
            for (int w2 = 0; w2 < 4; ++w2) {
              const int sum = i1 * w1 + i2 * w2;
              const bool hit = predicate == Predicate::Equal ? sum == ac : sum >= ac;
              if (!hit) continue;
              ++count;
              CHECK(set.contains(Assignment{{i1, i2}, {w1, w2}}));
            }
          }
        }
      }
      CHECK(set.size() == count);
    }
  }
}

TEST_CASE("enumeration is deterministic and sorted") {
  const ProblemSpec spec{2, 2, 3, Predicate::Geq};
  const SolutionSet a = enumerate_solutions(spec, kJointInputs);
  const SolutionSet b = enumerate_solutions(spec, kJointInputs);
  CHECK(a.assignments == b.assignments);
  for (std::size_t i = 1; i < a.assignments.size(); ++i) {
    const auto& prev = a.assignments[i - 1];
    const auto& cur = a.assignments[i];
    const bool ordered = prev.inputs < cur.inputs ||
                         (prev.inputs == cur.inputs && prev.weights < cur.weights);
    CHECK(ordered);
  }
}

TEST_CASE("enumeration validates inputs") {
  const ProblemSpec spec{2, 2, 3, Predicate::Equal};
  CHECK_THROWS_AS(enumerate_solutions(spec, std::vector<int>{1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_solutions(spec, std::vector<int>{1, 2}), std::invalid_argument);
}

TEST_CASE("weight bitstring rendering") {
  const Assignment a{{1, 1}, {2, 3}};
  CHECK(a.weight_bits_string(2) == "10 11");
  CHECK(a.weight_bits_string(3) == "010 011");
}
