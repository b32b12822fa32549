#pragma once

namespace bioforge {

// Execution policy for the data-parallel kernels. Serial and parallel paths
// run identical arithmetic in identical order per work item, so results are
// bitwise equal; tests and the kernel benchmark rely on that.
enum class Exec { serial, parallel };

} // namespace bioforge
