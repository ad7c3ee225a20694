#include "qnc/verify.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qnc;

TEST(Registry, IdsUniqueAndWellFormed) {
  std::set<std::string> seen;
  for (const auto& ident : all_identities()) {
    EXPECT_TRUE(seen.insert(ident.id).second) << "duplicate id " << ident.id;
    EXPECT_FALSE(ident.ref.empty()) << ident.id;
    EXPECT_TRUE(ident.check != nullptr) << ident.id;
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == ident.suite;
    EXPECT_TRUE(known) << ident.id << " has unknown suite " << ident.suite;
  }
  EXPECT_FALSE(all_identities().empty());
}

TEST(Registry, UnknownIdReports) {
  CheckOutcome out = check_identity("no.such.id");
  EXPECT_FALSE(out.pass);
  EXPECT_NE(out.residue.find("unknown identity id"), std::string::npos);
}
