# Models, text formats and the certificate store
