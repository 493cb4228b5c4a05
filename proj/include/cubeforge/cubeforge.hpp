#pragma once

#include "adc.hpp"
#include "axioms.hpp"
#include "box.hpp"
#include "cubeseq.hpp"
#include "cubical.hpp"
#include "errors.hpp"
#include "globular.hpp"
#include "index.hpp"
#include "integer.hpp"
#include "invertibility.hpp"
#include "io.hpp"
#include "nerve.hpp"
#include "perm.hpp"
#include "quiver.hpp"
#include "smith.hpp"
#include "transfor.hpp"
