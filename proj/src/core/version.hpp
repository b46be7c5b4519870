#pragma once

#define MIXEDVOL_VERSION "1.0.0"
