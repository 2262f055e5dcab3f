#pragma once

#include "exdom/errors.hpp"
#include "exdom/types.hpp"
#include "exdom/numerics.hpp"
#include "exdom/parallel.hpp"
#include "exdom/special.hpp"
#include "exdom/domains.hpp"
#include "exdom/elliptic_domain.hpp"
#include "exdom/catalog.hpp"
#include "exdom/schwarz.hpp"
#include "exdom/axisym.hpp"
#include "exdom/verify.hpp"
#include "exdom/pseudocircle.hpp"
