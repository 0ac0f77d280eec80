#pragma once

#include "unitlat/errors.hpp"
#include "unitlat/real.hpp"
#include "unitlat/rational.hpp"
#include "unitlat/quad.hpp"
#include "unitlat/biquad.hpp"
#include "unitlat/cyclic_field.hpp"
#include "unitlat/log_lattice.hpp"
#include "unitlat/klein_units.hpp"
#include "unitlat/cyclic_units.hpp"
#include "unitlat/verifier.hpp"
#include "unitlat/serialize.hpp"
