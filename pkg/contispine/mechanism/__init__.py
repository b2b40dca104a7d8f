# contispine mechanism module
