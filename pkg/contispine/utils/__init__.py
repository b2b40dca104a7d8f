# contispine utils module
