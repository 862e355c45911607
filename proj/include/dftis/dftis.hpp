// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dftis/dft.hpp"
#include "dftis/eigen.hpp"
#include "dftis/errors.hpp"
#include "dftis/rac.hpp"
#include "dftis/sequence.hpp"
#include "dftis/transceiver.hpp"
