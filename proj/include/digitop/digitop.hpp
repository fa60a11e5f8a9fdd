#pragma once

#include "digitop/graph.hpp"
#include "digitop/canonical.hpp"
#include "digitop/smith.hpp"
#include "digitop/invariants.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/classify.hpp"
#include "digitop/transform.hpp"
#include "digitop/covers.hpp"
#include "digitop/digitizer.hpp"
#include "digitop/catalog.hpp"
#include "digitop/io.hpp"
