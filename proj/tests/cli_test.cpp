// placeholder; real tests land with the module
