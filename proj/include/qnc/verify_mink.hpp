#pragma once

/**
 * @file verify_mink.hpp
 * @brief Catalog of the four-space identities.
 *
 * Included by verify.hpp after the three-space catalog; include
 * "qnc/verify.hpp" rather than this header.
 */

namespace qnc {
namespace vdetail {

// TODO: four-space tensor, calculus and phase suites.
inline void build_mink_identities(std::vector<Identity>& out) { (void)out; }

inline std::vector<std::string> suite_notes(const std::string& suite) {
  (void)suite;
  return {};
}

}  // namespace vdetail
}  // namespace qnc
