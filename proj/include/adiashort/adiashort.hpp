#pragma once

#include "adiashort/analysis.hpp"
#include "adiashort/drive.hpp"
#include "adiashort/frame.hpp"
#include "adiashort/hamiltonian.hpp"
#include "adiashort/io.hpp"
#include "adiashort/mat2.hpp"
#include "adiashort/ode.hpp"
#include "adiashort/quad.hpp"
#include "adiashort/shortcut.hpp"
#include "adiashort/simulate.hpp"
#include "adiashort/spline.hpp"
#include "adiashort/types.hpp"
#include "adiashort/verify.hpp"
