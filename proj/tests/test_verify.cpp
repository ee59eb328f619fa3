#include <gtest/gtest.h>

#include <cstdlib>

#include "circlekit/verify.hpp"

using namespace circlekit;

TEST(VerifyReport, CapsListedViolations) {
  VerifyReport r;
  for (int i = 0; i < 70; ++i) r.violation("v" + std::to_string(i));
  EXPECT_EQ(r.violation_count, 70u);
  EXPECT_EQ(r.violations.size(), VerifyReport::kMaxListed);
  EXPECT_FALSE(r.ok());
  VerifyReport total;
  total.merge(std::move(r));
  EXPECT_EQ(total.violation_count, 70u);
  EXPECT_EQ(total.to_json()["violations"].size(), VerifyReport::kMaxListed);
}

TEST(Drivers, SmallScaleRunsAreClean) {
  const auto t1 = verify_theorem1(4, {2, 3});
  EXPECT_TRUE(t1.ok());
  EXPECT_EQ(t1.details["diagrams"], 25);
  EXPECT_EQ(t1.checked, 50u);

  const auto l1 = verify_lemma1(lemma1_suite(3, 5, 20, 3), {1, 2, 3});
  EXPECT_TRUE(l1.ok());
  EXPECT_GT(l1.checked, 0u);

  const auto l2 = verify_lemma2(5);
  EXPECT_TRUE(l2.ok());
  EXPECT_GT(l2.checked, 0u);

  const auto t2 = verify_theorem2(8, 30, 5);
  EXPECT_TRUE(t2.ok());

  const auto rm = verify_remark(4);
  EXPECT_TRUE(rm.ok());

  const auto p5 = verify_prop5(3);
  EXPECT_TRUE(p5.ok());
  EXPECT_EQ(p5.details["diagrams"], 1 + 3 + 15);

  const auto ot = verify_one_third(2);
  EXPECT_TRUE(ot.ok());
  EXPECT_EQ(ot.checked, 16u);

  const auto ms = verify_measurement(3);
  EXPECT_TRUE(ms.ok());
  // 1 + 2*2 + 8*3 vertex choices, three bases each.
  EXPECT_EQ(ms.checked, 3u * (1 + 4 + 24));
}

TEST(Drivers, OutputDoesNotDependOnThreadCount) {
  ::setenv("CIRCLEKIT_THREADS", "1", 1);
  const auto one = verify_theorem2(8, 40, 9).to_json().dump();
  const auto lemma_one = verify_lemma2(5).to_json().dump();
  ::setenv("CIRCLEKIT_THREADS", "4", 1);
  EXPECT_EQ(worker_count(), 4u);
  EXPECT_EQ(verify_theorem2(8, 40, 9).to_json().dump(), one);
  EXPECT_EQ(verify_lemma2(5).to_json().dump(), lemma_one);
  ::unsetenv("CIRCLEKIT_THREADS");
}

TEST(Parallel, RethrowsFirstError) {
  ::setenv("CIRCLEKIT_THREADS", "3", 1);
  std::vector<int> seen(100, 0);
  parallel_for(seen.size(), [&](std::size_t i) { seen[i] = 1; });
  EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 100);
  EXPECT_THROW(parallel_for(50, [](std::size_t i) {
                 if (i == 17) throw PreconditionError("boom");
               }),
               PreconditionError);
  ::unsetenv("CIRCLEKIT_THREADS");
}
