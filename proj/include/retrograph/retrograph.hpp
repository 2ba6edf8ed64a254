#pragma once

// Umbrella header: retroactive graph data structures, the brute-force
// oracle, workload generators, and the trace tooling.

#include <retrograph/checkpoint_tree.hpp>
#include <retrograph/cli.hpp>
#include <retrograph/oracle.hpp>
#include <retrograph/retro_full.hpp>
#include <retrograph/retro_incremental.hpp>
#include <retrograph/timeline.hpp>
#include <retrograph/workloads.hpp>
