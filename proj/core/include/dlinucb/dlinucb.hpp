#pragma once

#include "dlinucb/agents.hpp"
#include "dlinucb/badness.hpp"
#include "dlinucb/contamination.hpp"
#include "dlinucb/detection.hpp"
#include "dlinucb/environment.hpp"
#include "dlinucb/experiment.hpp"
#include "dlinucb/linalg.hpp"
#include "dlinucb/master_policy.hpp"
#include "dlinucb/output.hpp"
#include "dlinucb/replay.hpp"
#include "dlinucb/slave_model.hpp"
#include "dlinucb/types.hpp"
