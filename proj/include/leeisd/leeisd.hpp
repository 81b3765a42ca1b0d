#pragma once

#include "ring.hpp"
#include "counting.hpp"
#include "matrix.hpp"
#include "instance.hpp"
#include "merge.hpp"
#include "decoders.hpp"
#include "workfactor.hpp"
#include "asymptotics.hpp"
#include "reduction3dm.hpp"
