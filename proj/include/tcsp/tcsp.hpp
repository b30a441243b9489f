#pragma once

#include "tcsp/braid.hpp"
#include "tcsp/bytes.hpp"
#include "tcsp/channel.hpp"
#include "tcsp/codec.hpp"
#include "tcsp/demo.hpp"
#include "tcsp/elgamal.hpp"
#include "tcsp/error.hpp"
#include "tcsp/kex.hpp"
#include "tcsp/keyfile.hpp"
#include "tcsp/params.hpp"
#include "tcsp/reduction.hpp"
#include "tcsp/rng.hpp"
#include "tcsp/sampler.hpp"
#include "tcsp/sha256.hpp"
#include "tcsp/trapdoor.hpp"
