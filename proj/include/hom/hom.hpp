// hom.hpp — umbrella header

#pragma once

#include "hom/cli.hpp"
#include "hom/config.hpp"
#include "hom/core_model.hpp"
#include "hom/ensemble.hpp"
#include "hom/error.hpp"
#include "hom/oracle.hpp"
#include "hom/parallel.hpp"
