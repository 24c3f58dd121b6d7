#pragma once

#include "qdf/berg.hpp"
#include "qdf/big_index.hpp"
#include "qdf/decomp.hpp"
#include "qdf/error.hpp"
#include "qdf/gaussian_rational.hpp"
#include "qdf/norms.hpp"
#include "qdf/op_core.hpp"
#include "qdf/operator_spec.hpp"
#include "qdf/projection_family.hpp"
#include "qdf/szego.hpp"
#include "qdf/weight.hpp"
#include "qdf/weyl.hpp"
#include "qdf/window.hpp"
