#pragma once

#include "qpgan/circuit.hpp"
#include "qpgan/config.hpp"
#include "qpgan/dataset.hpp"
#include "qpgan/discriminator.hpp"
#include "qpgan/fock.hpp"
#include "qpgan/generator.hpp"
#include "qpgan/io.hpp"
#include "qpgan/mapping.hpp"
#include "qpgan/permanent.hpp"
#include "qpgan/rng.hpp"
#include "qpgan/simulator.hpp"
#include "qpgan/spsa.hpp"
#include "qpgan/train.hpp"
