# contispine config module
