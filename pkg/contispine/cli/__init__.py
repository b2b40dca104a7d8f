# contispine cli module
