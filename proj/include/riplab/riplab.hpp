#ifndef RIPLAB_RIPLAB_HPP
#define RIPLAB_RIPLAB_HPP

#include "riplab/distortion.hpp"
#include "riplab/ensembles.hpp"
#include "riplab/errors.hpp"
#include "riplab/io.hpp"
#include "riplab/lpaudit.hpp"
#include "riplab/matcore.hpp"
#include "riplab/report.hpp"
#include "riplab/ripcert.hpp"
#include "riplab/rng.hpp"
#include "riplab/spectral.hpp"
#include "riplab/witness.hpp"

#endif  // RIPLAB_RIPLAB_HPP
