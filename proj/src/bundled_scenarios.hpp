#pragma once

// Scenario JSON documents compiled in from scenarios/*.json at configure
// time; see src/bundled_scenarios.cpp.in.

namespace fedcloud::bundled {

extern const char* const job_a;
extern const char* const job_b;
extern const char* const migration_default;

}  // namespace fedcloud::bundled
