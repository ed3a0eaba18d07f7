#pragma once

#include "kerdock/channel.hpp"
#include "kerdock/codebook.hpp"
#include "kerdock/codebook_io.hpp"
#include "kerdock/complexity.hpp"
#include "kerdock/distances.hpp"
#include "kerdock/linalg.hpp"
#include "kerdock/metrics.hpp"
#include "kerdock/mub.hpp"
#include "kerdock/qam.hpp"
#include "kerdock/quaternary.hpp"
#include "kerdock/rng.hpp"
#include "kerdock/select.hpp"
#include "kerdock/sim.hpp"
#include "kerdock/version.hpp"
