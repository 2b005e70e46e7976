#pragma once

#include "sniep5/config.hpp"
#include "sniep5/construct.hpp"
#include "sniep5/eig.hpp"
#include "sniep5/errors.hpp"
#include "sniep5/json_io.hpp"
#include "sniep5/matrix.hpp"
#include "sniep5/oracle.hpp"
#include "sniep5/region.hpp"
#include "sniep5/spectrum.hpp"
