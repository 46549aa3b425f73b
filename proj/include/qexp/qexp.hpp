#pragma once

#include "qexp/errors.hpp"
#include "qexp/symbols.hpp"
#include "qexp/multipoly.hpp"
#include "qexp/ratfun.hpp"
#include "qexp/text.hpp"
#include "qexp/series.hpp"
#include "qexp/inversion.hpp"
#include "qexp/random.hpp"
#include "qexp/identities.hpp"
#include "qexp/properties.hpp"
#include "qexp/registry.hpp"
#include "qexp/bigreal.hpp"
#include "qexp/numeric.hpp"
#include "qexp/json_io.hpp"
