#pragma once

namespace zelkl {

// Desk-scale rank ceilings. These are default arguments threaded through the
// enumeration and table builders, not hard-coded limits; callers may pass a
// different ceiling explicitly.
struct Limits {
  static constexpr int sn_ceiling = 8;       // enumerate_sn
  static constexpr int wtilde_ceiling = 7;   // enumerate_wtilde
  static constexpr int kl_table_ceiling = 6; // full KL/R tables
};

} // namespace zelkl
