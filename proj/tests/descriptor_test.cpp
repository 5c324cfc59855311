#include <conewalk/descriptor.hpp>
#include <conewalk/surfaces.hpp>

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace conewalk;

namespace {

void expect_rejected(const std::string& text, const std::string& fragment) {
  try {
    parse_descriptor(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Descriptor, ParsesMinimalAndFull) {
  auto d = parse_descriptor(R"({"gram": [[0,1,1],[1,-2,0],[1,0,-2]]})");
  EXPECT_EQ(d.space, testing_support::k3_rank3());
  EXPECT_FALSE(d.marking);
  EXPECT_THROW(d.marked(), InputError);

  auto f = parse_descriptor(R"({"gram": [[1,0],[0,-1]], "labels": ["H","E1"], "marking": [2,-1],
                                "canonical": [-3,"1"]})");
  EXPECT_EQ(f.space.labels(), (std::vector<std::string>{"H", "E1"}));
  EXPECT_EQ(*f.marking, LatticeVector({2, -1}));
  EXPECT_EQ(*f.canonical, LatticeVector({-3, 1}));
  EXPECT_EQ(f.marked().marking_norm(), 3);
}

TEST(Descriptor, RejectsInvalidInput) {
  expect_rejected("{", "malformed JSON");
  expect_rejected("[1,2]", "JSON object");
  expect_rejected(R"({"labels": []})", "missing \"gram\"");
  expect_rejected(R"({"gram": [[1,0],[0]]})", "square");
  expect_rejected(R"({"gram": [[1,2],[0,-1]]})", "symmetric");
  expect_rejected(R"({"gram": [[1,0],[0,0]]})", "degenerate");
  expect_rejected(R"({"gram": [[1.5,0],[0,-1]]})", "integer");
  expect_rejected(R"({"gram": [["x",0],[0,-1]]})", "integer");
  expect_rejected(R"({"gram": [[1,0],[0,-1]], "marking": [0,1]})", "positive norm");
  expect_rejected(R"({"gram": [[1,0],[0,-1]], "marking": [1]})", "length");
  expect_rejected(R"({"gram": [[1,0],[0,-1]], "labels": ["H"]})", "rank");
  expect_rejected(R"({"gram": [[1,0],[0,-1]], "colour": 1})", "unknown descriptor field");
  // Beyond 64 bits a bare number is parsed as a float by JSON readers.
  expect_rejected(R"({"gram": [[1,0],[0,-100000000000000000000000]]})", "decimal strings");
}

TEST(Descriptor, LargeIntegersAsStrings) {
  const Integer big = (Integer(1) << 53) + 1;
  const Integer huge = Integer("-123456789012345678901234567890");
  IntMatrix g{{1, 0}, {0, -1}};
  g(1, 1) = huge;
  LatticeDescriptor d{LatticeSpace(g), LatticeVector(std::vector<Integer>{big, Integer(1)}), std::nullopt};
  const std::string text = write_descriptor(d);
  EXPECT_NE(text.find("\"9007199254740993\""), std::string::npos) << text;
  EXPECT_NE(text.find("\"-123456789012345678901234567890\""), std::string::npos);
  EXPECT_EQ(parse_descriptor(text), d);
  // 2^53 itself is still exact as a number.
  LatticeDescriptor e{LatticeSpace(IntMatrix{{1, 0}, {0, -1}}),
                      LatticeVector(std::vector<Integer>{Integer(1) << 53, Integer(0)}), std::nullopt};
  EXPECT_NE(write_descriptor(e).find("9007199254740992"), std::string::npos);
  EXPECT_EQ(write_descriptor(e).find("\"9007199254740992\""), std::string::npos);
}

TEST(Descriptor, RoundTripRandom) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(-5, 5), bits(0, 120), coin(0, 1);
  int done = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4;
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Integer v = small(rng);
        if (coin(rng) && i == j) v *= Integer(1) << bits(rng);
        g(i, j) = g(j, i) = v;
      }
    if (determinant(g) == 0) continue;
    LatticeSpace L(g);
    LatticeDescriptor d{L, std::nullopt, std::nullopt};
    if (coin(rng)) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
      d.space = LatticeSpace(g, labels);
    }
    LatticeVector c = testing_support::random_vector(rng, n, 9);
    if (coin(rng)) d.canonical = c;
    if (norm(L, c) > 0) d.marking = c;
    const auto text = write_descriptor(d);
    EXPECT_EQ(parse_descriptor(text), d) << text;
    EXPECT_EQ(write_descriptor(parse_descriptor(text)), text);
    ++done;
  }
  EXPECT_GT(done, 100);
}

TEST(Descriptor, RegistryModelsRoundTrip) {
  for (const auto& name : example_names()) {
    const auto ex = example_registry(name);
    LatticeDescriptor d{ex.model.space(), ex.model.lattice.marking(), ex.model.canonical};
    EXPECT_EQ(parse_descriptor(write_descriptor(d)), d) << name;
  }
}

TEST(TextForms, VectorsAndMatrices) {
  EXPECT_EQ(parse_vector("1,0,-1"), LatticeVector({1, 0, -1}));
  EXPECT_EQ(parse_vector("(4, 2, -1)"), LatticeVector({4, 2, -1}));
  EXPECT_EQ(parse_vector("[7]"), LatticeVector({7}));
  EXPECT_THROW(parse_vector("1,,2"), InputError);
  EXPECT_THROW(parse_vector("1,x"), InputError);
  EXPECT_THROW(parse_vector(""), InputError);
  EXPECT_EQ(parse_vector_list("(1,0),(1,-1)"), (std::vector<LatticeVector>{{1, 0}, {1, -1}}));
  EXPECT_EQ(parse_vector_list("1,0;1,-1"), (std::vector<LatticeVector>{{1, 0}, {1, -1}}));
  EXPECT_EQ(parse_matrix("1,4,0;0,2,1;0,-1,0"), (IntMatrix{{1, 4, 0}, {0, 2, 1}, {0, -1, 0}}));
  EXPECT_THROW(parse_matrix("1,0;1"), InputError);
  EXPECT_EQ(parse_integer(" -12 "), -12);
  EXPECT_EQ(parse_integer("+3"), 3);
  EXPECT_THROW(parse_integer("-"), InputError);
}
