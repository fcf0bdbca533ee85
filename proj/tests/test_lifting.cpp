#include <gtest/gtest.h>

#include "arbopack/gallery.hpp"
#include "arbopack/lifting.hpp"
#include "support/oracles.hpp"

using namespace arbopack;

namespace {

EdgeSet ids(std::initializer_list<std::int64_t> list) {
  EdgeSet out;
  for (auto v : list) out.insert(EdgeId{v});
  return out;
}

EdgeSet first_ids(std::int64_t n) {
  EdgeSet out;
  for (std::int64_t i = 1; i <= n; ++i) out.insert(EdgeId{i});
  return out;
}

const LayeredDigraphSpec& forward_ray() {
  static const auto spec = make_example("forward_ray").spec;
  return spec;
}

void expect_consistent(const LayeredDigraphSpec& spec, const PackingChain& chain, std::size_t k) {
  for (std::size_t i = 0; i < chain.levels.size(); ++i) {
    const auto& level = chain.levels[i];
    EXPECT_EQ(level.depth, i + 1);
    ASSERT_EQ(level.parts.size(), k);
    const auto g = contract_at_depth(spec, level.depth).quotient;
    EXPECT_FALSE(level_packing_problem(g, level));
    for (const auto& part : level.parts) {
      if (g.vertex_count() <= 12) {
        EXPECT_TRUE(oracle::spanning_reachable(g, part, level.root));
      }
      if (g.vertex_count() <= 8) {
        EXPECT_TRUE(oracle::small_sets_entered(g, part, level.root));
      }
    }
    if (i + 1 < chain.levels.size()) {
      EXPECT_EQ(restrict_packing(chain.levels[i + 1], spec), level);
    }
  }
}

}  // namespace

TEST(RestrictPacking, ForwardRay) {
  const LevelPacking top{1, "r", {ids({1, 2})}};
  const auto low = restrict_packing(top, forward_ray());
  EXPECT_EQ(low.depth, 0u);
  EXPECT_EQ(low.parts, std::vector<EdgeSet>{ids({1})});
}

TEST(RestrictPacking, RejectsInvalidInput) {
  const auto code = [](const LevelPacking& p) {
    try {
      restrict_packing(p, forward_ray());
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadParams;
  };
  EXPECT_EQ(code({2, "r", {EdgeSet{}}}), ErrorCode::InvalidLevelPacking);
  EXPECT_EQ(code({2, "r", {ids({1, 2})}}), ErrorCode::InvalidLevelPacking);
  EXPECT_EQ(code({2, "r", {ids({1, 2, 3}), ids({1})}}), ErrorCode::InvalidLevelPacking);
  EXPECT_EQ(code({0, "r", {ids({1})}}), ErrorCode::InvalidLevelPacking);
}

TEST(RestrictPacking, ForcedCircle) {
  // G_1: r, a@0, b@0, c@0 and the dummy ~a@1; the packing grows along the
  // lowest ids: r->a@0, r->b@0, a@0->c@0, a@0->~a@1.
  const auto spec = make_example("forced_circle").spec;
  const auto g1 = contract_at_depth(spec, 1).quotient;
  const auto packed = std::get<ArborescencePacking>(pack_arborescences(g1, "r", 1));
  EXPECT_EQ(packed.parts, std::vector<EdgeSet>{ids({1, 2, 3, 5})});
  const auto low = restrict_packing({1, "r", packed.parts}, spec);
  EXPECT_EQ(low.parts, std::vector<EdgeSet>{ids({1, 2})});
}

TEST(CheckPackingCondition, Examples) {
  EXPECT_FALSE(check_packing_condition(forward_ray(), AtVertex{"r"}, 1, 10));
  const auto cert = check_packing_condition(forward_ray(), AtVertex{"r"}, 2, 2);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->deficiency, 1u);
  EXPECT_EQ(cert->depth, 1u);
  EXPECT_EQ(cut_of(contract_at_depth(forward_ray(), 1).quotient, cert->side_y).forward.size(), 1u);
  EXPECT_FALSE(check_packing_condition(make_example("grid", 2).spec, AtVertex{"r"}, 2, 8));
  EXPECT_TRUE(check_packing_condition(make_example("grid", 2).spec, AtVertex{"r"}, 3, 8));
}

TEST(CheckPackingCondition, Errors) {
  EXPECT_THROW(check_packing_condition(forward_ray(), AtVertex{"r"}, 0, 2), Error);
  EXPECT_THROW(check_packing_condition(forward_ray(), AtVertex{"r"}, 1, 0), Error);
}

TEST(CheckPackingCondition, CertificateDescribesDummies) {
  const auto cert = check_packing_condition(make_example("two_ended").spec, AtVertex{"r"}, 2, 3);
  ASSERT_TRUE(cert);
  for (const auto& v : cert->side_y) {
    if (v.starts_with('~')) {
      EXPECT_TRUE(cert->dummies.at(v).starts_with("component beyond depth"));
    }
  }
}

// A failing cut keeps its in-degree when re-read at any greater depth.
TEST(CheckPackingCondition, CertificatePersists) {
  for (const auto& [name, k] : std::vector<std::pair<std::string, std::size_t>>{
           {"forward_ray", 2}, {"two_ended", 2}, {"backward_ray_root", 1}, {"forced_circle", 2}, {"grid", 3}}) {
    const auto spec = make_example(name, name == "grid" ? std::optional<std::size_t>(2) : std::nullopt).spec;
    const auto cert = check_packing_condition(spec, AtVertex{"r"}, k, 4);
    ASSERT_TRUE(cert) << name;
    for (std::size_t m = cert->depth; m <= cert->depth + 6; ++m) {
      const auto g = contract_at_depth(spec, m).quotient;
      const auto side = expand_side(spec, cert->depth, cert->side_y, m);
      EXPECT_EQ(cut_of(g, side).forward.size(), cert->deficiency) << name << " " << m;
    }
  }
}

TEST(LiftChain, ForwardRayLevels) {
  const auto chain = std::get<PackingChain>(lift_chain(forward_ray(), AtVertex{"r"}, 1, 5));
  ASSERT_EQ(chain.levels.size(), 5u);
  for (std::size_t n = 1; n <= 5; ++n)
    EXPECT_EQ(chain.levels[n - 1].parts, std::vector<EdgeSet>{first_ids(static_cast<std::int64_t>(n) + 1)});
  expect_consistent(forward_ray(), chain, 1);
}

TEST(LiftChain, DeficientSpecGivesCertificate) {
  const auto r = lift_chain(forward_ray(), AtVertex{"r"}, 2, 4);
  ASSERT_TRUE(std::holds_alternative<ConditionCertificate>(r));
  EXPECT_EQ(std::get<ConditionCertificate>(r).deficiency, 1u);
}

TEST(LiftChain, FiniteSpecChainIsConstant) {
  const auto g = build_digraph({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}, {"a", "b"}, {"b", "a"}});
  const auto spec = finite_spec(g);
  const auto chain = std::get<PackingChain>(lift_chain(spec, AtVertex{"r"}, 2, 3));
  ASSERT_EQ(chain.levels.size(), 3u);
  for (const auto& level : chain.levels)
    EXPECT_EQ(level.parts, (std::vector<EdgeSet>{ids({1, 3}), ids({2, 4})}));
  expect_consistent(spec, chain, 2);
}

TEST(LiftChain, GalleryChainsAreConsistent) {
  for (const auto& [name, k] : std::vector<std::pair<std::string, std::size_t>>{
           {"forward_ray", 1}, {"two_ended", 1}, {"forced_circle", 1}, {"grid", 2}}) {
    const auto spec = make_example(name, name == "grid" ? std::optional<std::size_t>(2) : std::nullopt).spec;
    const auto chain = std::get<PackingChain>(lift_chain(spec, AtVertex{"r"}, k, 8));
    expect_consistent(spec, chain, k);
  }
}

TEST(LiftChain, EndRoot) {
  // Rooted at the end of a backward ray, every vertex is reached from
  // infinity.
  const auto spec = make_example("backward_ray_root").spec;
  const auto end = *list_ends(spec).begin();
  const auto chain = std::get<PackingChain>(lift_chain(spec, AtEnd{end}, 1, 6));
  for (const auto& level : chain.levels) EXPECT_EQ(level.root, "~u@" + std::to_string(level.depth));
  expect_consistent(spec, chain, 1);
}

TEST(ProjectVertex, MapsIntoShallowerContractions) {
  const auto spec = make_example("two_ended").spec;
  EXPECT_EQ(project_vertex(spec, "~a@5", 5, 2), "~a@2");
  EXPECT_EQ(project_vertex(spec, "b@3", 5, 2), "~b@2");
  EXPECT_EQ(project_vertex(spec, "a@1", 5, 2), "a@1");
  EXPECT_EQ(project_vertex(spec, "r", 5, 0), "r");
}
